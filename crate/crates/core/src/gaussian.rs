//! Exact arithmetic in the Gaussian integers.
//!
//! Components are `i64`; every product is formed in `i128` and narrowed with
//! a check, so overflow surfaces as [`Error::Overflow`] (or a panic for the
//! operator impls) instead of wrapping. Norms above 2^62 are rejected by the
//! checked entry points.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest norm accepted by the checked entry points.
pub const NORM_CAP: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
pub const I: GaussInt = GaussInt { re: 0, im: 1 };

/// The four units, in the order 1, i, -1, -i.
pub const UNITS: [GaussInt; 4] = [
    GaussInt { re: 1, im: 0 },
    GaussInt { re: 0, im: 1 },
    GaussInt { re: -1, im: 0 },
    GaussInt { re: 0, im: -1 },
];

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn from_int(n: i64) -> Self {
        GaussInt { re: n, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Exact norm `re^2 + im^2`; cannot overflow.
    pub fn norm(&self) -> u128 {
        let (a, b) = (self.re as i128, self.im as i128);
        (a * a + b * b) as u128
    }

    /// Norm as `u64`, rejecting values above [`NORM_CAP`].
    pub fn checked_norm(&self) -> Result<u64> {
        let n = self.norm();
        if n > NORM_CAP as u128 {
            return Err(Error::Overflow("norm"));
        }
        Ok(n as u64)
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn abs(&self) -> f64 {
        (self.re as f64).hypot(self.im as f64)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_add(o.re).ok_or(Error::Overflow("add"))?,
            self.im.checked_add(o.im).ok_or(Error::Overflow("add"))?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_sub(o.re).ok_or(Error::Overflow("sub"))?,
            self.im.checked_sub(o.im).ok_or(Error::Overflow("sub"))?,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        let (a, b) = (self.re as i128, self.im as i128);
        let (c, d) = (o.re as i128, o.im as i128);
        Ok(GaussInt::new(
            narrow(a * c - b * d, "mul")?,
            narrow(a * d + b * c, "mul")?,
        ))
    }

    pub fn pow(self, e: u32) -> Result<Self> {
        let mut acc = ONE;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// True when `self` divides `other` exactly.
    pub fn divides(&self, other: GaussInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let n = self.norm() as i128;
        let (a, b) = (other.re as i128, other.im as i128);
        let (c, d) = (self.re as i128, -(self.im as i128));
        (a * c - b * d) % n == 0 && (a * d + b * c) % n == 0
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn exact_div(self, d: GaussInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let (q, r) = div_rem(self, d)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Rotate by a unit into the first quadrant: `re > 0, im >= 0`.
    /// Returns `(u, u * self)`. Zero maps to `(1, 0)`.
    pub fn canonical_with_unit(&self) -> (GaussInt, GaussInt) {
        if self.is_zero() {
            return (ONE, ZERO);
        }
        let mut z = *self;
        let mut u = ONE;
        while !(z.re > 0 && z.im >= 0) {
            z = GaussInt::new(-z.im, z.re);
            u = GaussInt::new(-u.im, u.re);
        }
        (u, z)
    }

    pub fn canonical(&self) -> GaussInt {
        self.canonical_with_unit().1
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<GaussInt> {
        if self.is_unit() {
            Some(self.conj())
        } else {
            None
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, b) => write!(f, "{b}i"),
            (a, 1) => write!(f, "{a}+i"),
            (a, -1) => write!(f, "{a}-i"),
            (a, b) if b > 0 => write!(f, "{a}+{b}i"),
            (a, b) => write!(f, "{a}{b}i"),
        }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("GaussInt addition overflow")
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("GaussInt subtraction overflow")
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("GaussInt multiplication overflow")
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl From<i64> for GaussInt {
    fn from(n: i64) -> Self {
        GaussInt::from_int(n)
    }
}

/// Nearest integer to `num / den` (den > 0), ties toward negative infinity.
fn round_half_down(num: i128, den: i128) -> i128 {
    (2 * num + den - 1).div_euclid(2 * den)
}

/// Euclidean division: `a = q*b + r` with `norm(r) <= norm(b)/2`.
///
/// The quotient rounds each coordinate of `a/b` to the nearest integer,
/// ties toward negative infinity.
pub fn div_rem(a: GaussInt, b: GaussInt) -> Result<(GaussInt, GaussInt)> {
    if b.is_zero() {
        return Err(Error::Domain("division by zero".into()));
    }
    b.checked_norm()?;
    a.checked_norm()?;
    let n = b.norm() as i128;
    let (ar, ai) = (a.re as i128, a.im as i128);
    let (br, bi) = (b.re as i128, b.im as i128);
    // a * conj(b)
    let num_re = ar * br + ai * bi;
    let num_im = ai * br - ar * bi;
    let q = GaussInt::new(
        narrow(round_half_down(num_re, n), "div_rem")?,
        narrow(round_half_down(num_im, n), "div_rem")?,
    );
    let r = a.checked_sub(q.checked_mul(b)?)?;
    Ok((q, r))
}

/// Extended gcd: returns `(g, x, y)` with `g = a*x + b*y`, `g` canonical.
pub fn gcd_ext(a: GaussInt, b: GaussInt) -> Result<(GaussInt, GaussInt, GaussInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd of two zeros".into()));
    }
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (ONE, ZERO);
    let (mut y0, mut y1) = (ZERO, ONE);
    while !r1.is_zero() {
        let (q, r) = div_rem(r0, r1)?;
        let x2 = x0.checked_sub(q.checked_mul(x1)?)?;
        let y2 = y0.checked_sub(q.checked_mul(y1)?)?;
        r0 = r1;
        r1 = r;
        x0 = x1;
        x1 = x2;
        y0 = y1;
        y1 = y2;
    }
    let (u, g) = r0.canonical_with_unit();
    Ok((g, x0.checked_mul(u)?, y0.checked_mul(u)?))
}

pub fn gcd(a: GaussInt, b: GaussInt) -> Result<GaussInt> {
    Ok(gcd_ext(a, b)?.0)
}

/// Ordering used to break ties between residue representatives of equal norm.
fn lex(a: &GaussInt, b: &GaussInt) -> Ordering {
    (a.re, a.im).cmp(&(b.re, b.im))
}

/// Minimal-norm representative of `z` modulo `c`; among equal norms the
/// lexicographically largest `(re, im)` wins, so mod 2 the classes are `{0, 1, i, 1+i}`.
pub fn reduce(z: GaussInt, c: GaussInt) -> Result<GaussInt> {
    if c.is_zero() {
        return Err(Error::Domain("reduction modulo zero".into()));
    }
    let (q, _) = div_rem(z, c)?;
    let mut best: Option<GaussInt> = None;
    for dx in -1..=1 {
        for dy in -1..=1 {
            let cand_q = q.checked_add(GaussInt::new(dx, dy))?;
            let r = z.checked_sub(cand_q.checked_mul(c)?)?;
            best = Some(match best {
                None => r,
                Some(b) => match r.norm().cmp(&b.norm()) {
                    Ordering::Less => r,
                    Ordering::Equal if lex(&r, &b) == Ordering::Greater => r,
                    _ => b,
                },
            });
        }
    }
    Ok(best.expect("nine candidates"))
}

/// `a^{-1} mod c` as the canonical (minimal-norm) residue.
pub fn inv_mod(a: GaussInt, c: GaussInt) -> Result<GaussInt> {
    if c.is_zero() {
        return Err(Error::Domain("modulus zero".into()));
    }
    if c.is_unit() {
        return Ok(ZERO);
    }
    if a.is_zero() {
        return Err(Error::NotInvertible {
            a,
            modulus: c,
            gcd: c.canonical(),
        });
    }
    let (g, x, _) = gcd_ext(a, c)?;
    if g != ONE {
        return Err(Error::NotInvertible { a, modulus: c, gcd: g });
    }
    reduce(x, c)
}

/// Representatives of the unit group modulo squares: `{1, i}`.
pub fn units_mod_squares() -> [GaussInt; 2] {
    [ONE, I]
}

/// Class of a unit in units/squares, as one of `{1, i}`.
pub fn unit_class_mod_squares(u: GaussInt) -> Option<GaussInt> {
    match (u.re, u.im) {
        (1, 0) | (-1, 0) => Some(ONE),
        (0, 1) | (0, -1) => Some(I),
        _ => None,
    }
}

/// Canonical generator of an ideal: argument in `[0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealRep(GaussInt);

impl IdealRep {
    pub fn new(z: GaussInt) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::Domain("the zero ideal has no canonical generator".into()));
        }
        Ok(IdealRep(z.canonical()))
    }

    pub fn unit() -> Self {
        IdealRep(ONE)
    }

    pub fn gen(&self) -> GaussInt {
        self.0
    }

    pub fn norm(&self) -> u128 {
        self.0.norm()
    }
}

impl Ord for IdealRep {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .norm()
            .cmp(&other.0.norm())
            .then_with(|| lex(&self.0, &other.0))
    }
}

impl PartialOrd for IdealRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Canonical ideal generators with `lo < norm <= hi`, sorted by [`IdealRep`] order.
pub fn ideals_in_norm_range(lo: u64, hi: u64) -> Vec<IdealRep> {
    let mut out = Vec::new();
    let r = (hi as f64).sqrt() as i64 + 1;
    for a in 1..=r {
        for b in 0..=r {
            let n = (a * a + b * b) as u64;
            if n > lo && n <= hi {
                out.push(IdealRep(GaussInt::new(a, b)));
            }
        }
    }
    out.sort();
    out
}
