//! Complete residue systems for the quotient ring modulo a Gaussian integer.
//!
//! The ideal `(c)` is the rank-2 sublattice of Z^2 spanned by `c` and `i*c`.
//! Its Smith normal form `U M V = diag(d1, d2)` gives the quotient as
//! `Z/d1 x Z/d2`, so the classes are enumerated exactly (no dedupe) as
//! `U^{-1} (x, y)` with `0 <= x < d1`, `0 <= y < d2`, then reduced to the
//! minimal-norm representative.

use crate::error::{Error, Result};
use crate::gaussian::{reduce, GaussInt};

/// Default cap on `norm(c)` for residue enumeration.
pub const DEFAULT_RESIDUE_CAP: u64 = 1 << 20;

type Mat = [[i128; 2]; 2];

/// Smith normal form of a nonsingular 2x2 integer matrix.
///
/// Returns `(U, d1, d2)` with `U` unimodular, `d1 | d2`, both positive, and
/// `U M V = diag(d1, d2)` for some unimodular `V` (not tracked).
fn smith_2x2(m: Mat) -> (Mat, i128, i128) {
    let mut a = m;
    let mut u: Mat = [[1, 0], [0, 1]];
    loop {
        // pivot: smallest nonzero |entry| moved to (0,0)
        let mut best = None;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj): (usize, usize)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = best.expect("nonsingular matrix");
        if pi == 1 {
            a.swap(0, 1);
            u.swap(0, 1);
        }
        if pj == 1 {
            for row in a.iter_mut() {
                row.swap(0, 1);
            }
        }
        let p = a[0][0];
        // clear column 0 with row operations (tracked in U)
        let q = a[1][0].div_euclid(p);
        for j in 0..2 {
            a[1][j] -= q * a[0][j];
            u[1][j] -= q * u[0][j];
        }
        // clear row 0 with column operations
        let q = a[0][1].div_euclid(p);
        for row in a.iter_mut() {
            row[1] -= q * row[0];
        }
        if a[1][0] != 0 || a[0][1] != 0 {
            continue;
        }
        if a[1][1] % a[0][0] != 0 {
            // fold row 1 into row 0 and restart
            for j in 0..2 {
                a[0][j] += a[1][j];
                u[0][j] += u[1][j];
            }
            continue;
        }
        break;
    }
    let (mut d1, mut d2) = (a[0][0], a[1][1]);
    if d1 < 0 {
        d1 = -d1;
        u[0] = [-u[0][0], -u[0][1]];
    }
    if d2 < 0 {
        d2 = -d2;
        u[1] = [-u[1][0], -u[1][1]];
    }
    (u, d1, d2)
}

fn inverse_unimodular(u: &Mat) -> Mat {
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    debug_assert!(det == 1 || det == -1);
    [[u[1][1] * det, -u[0][1] * det], [-u[1][0] * det, u[0][0] * det]]
}

/// A complete, duplicate-free transversal of residues modulo `modulus`.
#[derive(Debug, Clone)]
pub struct ResidueSystem {
    modulus: GaussInt,
    reps: Vec<GaussInt>,
    smith_diag: (u64, u64),
    u: Mat,
}

impl ResidueSystem {
    pub fn new(c: GaussInt) -> Result<Self> {
        Self::with_cap(c, DEFAULT_RESIDUE_CAP)
    }

    pub fn with_cap(c: GaussInt, cap: u64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("residue system modulo zero".into()));
        }
        let norm = c.checked_norm()?;
        if norm > cap {
            return Err(Error::Size { requested: norm, cap });
        }
        let (a, b) = (c.re as i128, c.im as i128);
        // columns: c = (a, b), i*c = (-b, a)
        let m: Mat = [[a, -b], [b, a]];
        let (u, d1, d2) = smith_2x2(m);
        debug_assert_eq!((d1 * d2) as u64, norm);
        let uinv = inverse_unimodular(&u);
        let v1 = GaussInt::new(uinv[0][0] as i64, uinv[1][0] as i64);
        let v2 = GaussInt::new(uinv[0][1] as i64, uinv[1][1] as i64);
        let mut reps = Vec::with_capacity(norm as usize);
        for x in 0..d1 as i64 {
            for y in 0..d2 as i64 {
                let z = GaussInt::new(x * v1.re + y * v2.re, x * v1.im + y * v2.im);
                reps.push(reduce(z, c)?);
            }
        }
        Ok(ResidueSystem {
            modulus: c,
            reps,
            smith_diag: (d1 as u64, d2 as u64),
            u,
        })
    }

    pub fn modulus(&self) -> GaussInt {
        self.modulus
    }

    pub fn reps(&self) -> &[GaussInt] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn smith_diag(&self) -> (u64, u64) {
        self.smith_diag
    }

    /// Index in [`Self::reps`] of the class containing `z`.
    pub fn class_index(&self, z: GaussInt) -> usize {
        let (d1, d2) = (self.smith_diag.0 as i128, self.smith_diag.1 as i128);
        let x = (self.u[0][0] * z.re as i128 + self.u[0][1] * z.im as i128).rem_euclid(d1);
        let y = (self.u[1][0] * z.re as i128 + self.u[1][1] * z.im as i128).rem_euclid(d2);
        (x * d2 + y) as usize
    }

    /// Canonical representative of the class of `z`.
    pub fn reduce(&self, z: GaussInt) -> GaussInt {
        self.reps[self.class_index(z)]
    }
}
