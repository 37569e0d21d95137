//! Exact arithmetic in the real fields `Q(2cos(pi/m))`.
//!
//! A [`Scalar`] is either a plain rational or a polynomial in the field
//! generator `theta` reduced modulo its minimal polynomial. Rationals mix
//! freely with elements of any field, so `Scalar::zero()` and
//! `Scalar::one()` need no field handle. Signs are decided exactly by
//! evaluating on a rational isolating interval and bisecting until the
//! interval image excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest field degree accepted by default.
pub const DEFAULT_MAX_DEGREE: usize = 8;

const INTERVAL_BITS: u32 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("invalid dihedral order m = {0}; need m >= 2")]
    BadOrder(u32),
    #[error("field degree {degree} exceeds the configured bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("2cos(pi/{m}) does not lie in Q(2cos(pi/{base}))")]
    NotInField { m: u32, base: u32 },
    #[error("minimal polynomial certification failed for m = {0}")]
    MinPoly(u32),
}

/// A real number field `Q(theta)` with `theta = 2cos(pi/base)`.
///
/// `base <= 3` encodes the rationals (degree 1).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    base: u32,
    min_poly: Vec<BigRational>,
    lo: BigRational,
    hi: BigRational,
    lo_sign: i32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}
impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Chebyshev-type polynomials with `P_k(2cos x) = 2cos(kx)`, ascending coefficients.
pub fn chebyshev_p(k: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Remainder of `a` modulo the monic polynomial `m` (ascending coefficients).
fn poly_rem(mut a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
    let d = m.len() - 1;
    while a.len() > d {
        let top = a.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for (i, mc) in m.iter().take(d).enumerate() {
            a[shift + i] -= &top * mc;
        }
    }
    a.resize(d, BigRational::zero());
    a
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn interval_mul(
    a: &(BigRational, BigRational),
    b: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let p = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = p[0].clone();
    let mut hi = p[0].clone();
    for v in &p[1..] {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
fn sturm_count(p: &[BigRational], a: &BigRational, b: &BigRational) -> usize {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut a = a.to_vec();
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() && !(a.len() == 1 && a[0].is_zero()) {
            let top = a.last().unwrap().clone() / &lead;
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[shift + i] -= &top * bc;
            }
            a.pop();
            if a.is_empty() {
                a.push(BigRational::zero());
                break;
            }
        }
        trim(a)
    }
    let deriv: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat(i as i64))
        .collect();
    let mut seq = vec![trim(p.to_vec()), trim(deriv)];
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |x: &BigRational| {
        let signs: Vec<i32> = seq
            .iter()
            .map(|q| sign_of(&poly_eval(q, x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(a) - changes(b)
}

impl FieldSpec {
    /// The rational field.
    pub fn rationals() -> Arc<FieldSpec> {
        Arc::new(FieldSpec {
            base: 1,
            min_poly: vec![BigRational::zero(), BigRational::one()],
            lo: rat(-1),
            hi: rat(1),
            lo_sign: -1,
        })
    }

    /// `Q(2cos(pi/base))`, certified: the minimal polynomial divides
    /// `P_base(y) + 2` and the interval isolates exactly one root.
    pub fn cyclotomic_real(base: u32, max_degree: usize) -> Result<Arc<FieldSpec>, FieldError> {
        if base < 2 {
            return Err(FieldError::BadOrder(base));
        }
        if base <= 3 {
            return Ok(Self::rationals());
        }
        let degree = (euler_phi(2 * base) / 2) as usize;
        if degree > max_degree {
            return Err(FieldError::DegreeTooLarge {
                degree,
                bound: max_degree,
            });
        }
        let conj: Vec<f64> = (1..base)
            .filter(|k| k % 2 == 1 && k.gcd(&(2 * base)) == 1)
            .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / base as f64).cos())
            .collect();
        debug_assert_eq!(conj.len(), degree);
        let mut fl = vec![1.0f64];
        for r in &conj {
            let mut next = vec![0.0; fl.len() + 1];
            for (i, c) in fl.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            fl = next;
        }
        let min_poly: Vec<BigRational> = fl.iter().map(|c| rat(c.round() as i64)).collect();

        let mut p: Vec<BigRational> = chebyshev_p(base)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        p[0] += rat(2);
        let r = poly_rem(p, &min_poly);
        if r.iter().any(|c| !c.is_zero()) {
            return Err(FieldError::MinPoly(base));
        }

        let theta = conj[0];
        let gap = conj[1..]
            .iter()
            .map(|c| (c - theta).abs())
            .fold(1.0f64, f64::min);
        let scale = 1u64 << 30;
        let delta = (gap / 4.0).min(0.25);
        let to_rat = |x: f64| {
            BigRational::new(BigInt::from((x * scale as f64).floor() as i64), BigInt::from(scale))
        };
        let mut lo = to_rat(theta - delta);
        let mut hi = to_rat(theta + delta);
        let mut lo_sign = sign_of(&poly_eval(&min_poly, &lo));
        let hi_sign = sign_of(&poly_eval(&min_poly, &hi));
        if lo_sign == 0 || hi_sign == 0 || lo_sign == hi_sign {
            return Err(FieldError::MinPoly(base));
        }
        if sturm_count(&min_poly, &lo, &hi) != 1 {
            return Err(FieldError::MinPoly(base));
        }
        let target = BigRational::new(BigInt::one(), BigInt::one() << INTERVAL_BITS);
        while &hi - &lo > target {
            let mid = (&lo + &hi) / rat(2);
            let s = sign_of(&poly_eval(&min_poly, &mid));
            if s == 0 {
                return Err(FieldError::MinPoly(base));
            }
            if s == lo_sign {
                lo = mid;
                lo_sign = s;
            } else {
                hi = mid;
            }
        }
        Ok(Arc::new(FieldSpec {
            base,
            min_poly,
            lo,
            hi,
            lo_sign,
        }))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// The `m` with `theta = 2cos(pi/m)`; 1 for the rationals.
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    pub fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The generator `theta`.
    pub fn theta(self: &Arc<Self>) -> Scalar {
        if self.is_rational() {
            return Scalar::from_ratio(-self.min_poly[0].numer().to_i64().unwrap(), 1);
        }
        let mut c = vec![BigRational::zero(); self.degree()];
        c[1] = BigRational::one();
        Scalar::Alg(self.clone(), c)
    }

    /// `2cos(pi/m)` as an element of this field.
    pub fn two_cos_pi_over(self: &Arc<Self>, m: u32) -> Result<Scalar, FieldError> {
        match m {
            0 | 1 => Err(FieldError::BadOrder(m)),
            2 => Ok(Scalar::zero()),
            3 => Ok(Scalar::one()),
            _ if !self.base.is_multiple_of(m) || self.is_rational() => {
                Err(FieldError::NotInField { m, base: self.base })
            }
            _ => {
                let theta = self.theta();
                let p = chebyshev_p(self.base / m);
                let mut acc = Scalar::zero();
                for c in p.iter().rev() {
                    acc = &(&acc * &theta) + &Scalar::Rat(BigRational::from_integer(c.clone()));
                }
                Ok(acc)
            }
        }
    }

    fn reduce(self: &Arc<Self>, v: Vec<BigRational>) -> Scalar {
        let c = poly_rem(v, &self.min_poly);
        Scalar::normalized(self.clone(), c)
    }

    /// Sign of the polynomial `coeffs(theta)`; `coeffs` is nonzero and reduced.
    fn sign_at_root(&self, coeffs: &[BigRational]) -> i32 {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let mut lo_sign = self.lo_sign;
        loop {
            let iv = (lo.clone(), hi.clone());
            let mut acc = (
                coeffs.last().unwrap().clone(),
                coeffs.last().unwrap().clone(),
            );
            for c in coeffs.iter().rev().skip(1) {
                let m = interval_mul(&acc, &iv);
                acc = (m.0 + c, m.1 + c);
            }
            if acc.0.is_positive() {
                return 1;
            }
            if acc.1.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / rat(2);
            let s = sign_of(&poly_eval(&self.min_poly, &mid));
            assert!(s != 0, "irreducible minimal polynomial has a rational root");
            if s == lo_sign {
                lo = mid;
                lo_sign = s;
            } else {
                hi = mid;
            }
        }
    }

    fn approx_theta(&self) -> f64 {
        ((&self.lo + &self.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }
}

/// The field for a set of Coxeter matrix entries.
///
/// Entries in {2, 3, 4, 6} are realized rationally through crystallographic
/// normalization, so they do not enlarge the field. The remaining entries
/// are covered by `Q(2cos(pi/L))` with `L` their least common multiple.
pub fn field_make(m_values: &[u32]) -> Result<Arc<FieldSpec>, FieldError> {
    field_make_bounded(m_values, DEFAULT_MAX_DEGREE)
}

pub fn field_make_bounded(
    m_values: &[u32],
    max_degree: usize,
) -> Result<Arc<FieldSpec>, FieldError> {
    let mut l = 1u32;
    for &m in m_values {
        if m < 2 {
            return Err(FieldError::BadOrder(m));
        }
        if !matches!(m, 2 | 3 | 4 | 6) {
            l = l.lcm(&m);
        }
    }
    if l == 1 {
        Ok(FieldSpec::rationals())
    } else {
        FieldSpec::cyclotomic_real(l, max_degree)
    }
}

/// Field containing `2cos(pi/m)` for every given `m`, including 4 and 6.
pub fn field_for_entries(m_values: &[u32], max_degree: usize) -> Result<Arc<FieldSpec>, FieldError> {
    let mut l = 1u32;
    for &m in m_values {
        if m < 2 {
            return Err(FieldError::BadOrder(m));
        }
        if m > 3 {
            l = l.lcm(&m);
        }
    }
    if l == 1 {
        Ok(FieldSpec::rationals())
    } else {
        FieldSpec::cyclotomic_real(l, max_degree)
    }
}

/// An exact real number in some field `Q(2cos(pi/m))`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    /// Power-basis coordinates; at least one coefficient beyond the constant is nonzero.
    Alg(Arc<FieldSpec>, Vec<BigRational>),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar::Rat(q)
    }

    /// Builds a field element from power-basis coordinates.
    pub fn from_coeffs(field: &Arc<FieldSpec>, coeffs: Vec<BigRational>) -> Scalar {
        field.reduce(coeffs)
    }

    fn normalized(field: Arc<FieldSpec>, mut c: Vec<BigRational>) -> Scalar {
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Scalar::Rat(c.swap_remove(0))
        } else {
            Scalar::Alg(field, c)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Alg(..) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Alg(..) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<FieldSpec>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(f, _) => Some(f),
        }
    }

    /// Power-basis coordinates padded to `degree`.
    pub fn coeffs(&self, degree: usize) -> Vec<BigRational> {
        match self {
            Scalar::Rat(q) => {
                let mut v = vec![BigRational::zero(); degree.max(1)];
                v[0] = q.clone();
                v
            }
            Scalar::Alg(_, c) => c.clone(),
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            Scalar::Rat(q) => sign_of(q),
            Scalar::Alg(f, c) => f.sign_at_root(c),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Alg(f, c) => {
                let t = f.approx_theta();
                c.iter()
                    .rev()
                    .fold(0.0, |acc, x| acc * t + x.to_f64().unwrap_or(f64::NAN))
            }
        }
    }

    fn common_field(a: &Scalar, b: &Scalar) -> Result<Option<Arc<FieldSpec>>, FieldError> {
        match (a, b) {
            (Scalar::Alg(f, _), Scalar::Alg(g, _)) => {
                if Arc::ptr_eq(f, g) || f == g {
                    Ok(Some(f.clone()))
                } else {
                    Err(FieldError::FieldMismatch)
                }
            }
            (Scalar::Alg(f, _), _) | (_, Scalar::Alg(f, _)) => Ok(Some(f.clone())),
            _ => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, other) {
            return Ok(Scalar::Rat(a + b));
        }
        let f = Self::common_field(self, other)?.unwrap();
        let d = f.degree();
        let a = self.coeffs(d);
        let b = other.coeffs(d);
        Ok(Scalar::normalized(
            f,
            a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Rat(q), Scalar::Alg(f, c)) | (Scalar::Alg(f, c), Scalar::Rat(q)) => {
                Ok(Scalar::normalized(f.clone(), c.iter().map(|x| x * q).collect()))
            }
            (Scalar::Alg(_, a), Scalar::Alg(_, b)) => {
                let f = Self::common_field(self, other)?.unwrap();
                let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                Ok(f.reduce(prod))
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Alg(f, c) => {
                // Columns of the matrix of multiplication by `self` are self * theta^j.
                let d = f.degree();
                let mut cols = Vec::with_capacity(d);
                let mut cur = c.clone();
                for _ in 0..d {
                    cols.push(cur.clone());
                    let mut shifted = vec![BigRational::zero()];
                    shifted.extend(cur.iter().cloned());
                    cur = poly_rem(shifted, &f.min_poly);
                }
                let mut m: Vec<Vec<BigRational>> = (0..d)
                    .map(|i| {
                        let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                        row.push(if i == 0 {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        });
                        row
                    })
                    .collect();
                for col in 0..d {
                    let piv = (col..d)
                        .find(|&r| !m[r][col].is_zero())
                        .ok_or(FieldError::DivisionByZero)?;
                    m.swap(col, piv);
                    let p = m[col][col].clone();
                    for x in m[col].iter_mut() {
                        *x /= &p;
                    }
                    for r in 0..d {
                        if r != col && !m[r][col].is_zero() {
                            let factor = m[r][col].clone();
                            for k in col..=d {
                                let v = &m[col][k] * &factor;
                                m[r][k] -= v;
                            }
                        }
                    }
                }
                Ok(Scalar::normalized(
                    f.clone(),
                    m.into_iter().map(|row| row[d].clone()).collect(),
                ))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Self::common_field(self, other)?;
        self.checked_mul(&other.checked_inv()?)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(f, a), Scalar::Alg(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(q) => q.hash(state),
            Scalar::Alg(_, c) => c.hash(state),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rat(q)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Alg(f, c) => Scalar::Alg(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on field mismatch or division by zero; see the `checked_` variants.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Alg(_, c) => {
                let mut first = true;
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let term = match i {
                        0 => format!("{}", x.abs()),
                        1 if x.abs().is_one() => "t".to_string(),
                        1 => format!("{}*t", x.abs()),
                        _ if x.abs().is_one() => format!("t^{i}"),
                        _ => format!("{}*t^{i}", x.abs()),
                    };
                    match (first, x.is_negative()) {
                        (true, true) => write!(f, "-{term}")?,
                        (true, false) => write!(f, "{term}")?,
                        (false, true) => write!(f, " - {term}")?,
                        (false, false) => write!(f, " + {term}")?,
                    }
                    first = false;
                }
                Ok(())
            }
        }
    }
}

/// Dense vector of scalars.
pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += &(x * y);
    }
    acc
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vscale(a: &[Scalar], k: &Scalar) -> Vector {
    a.iter().map(|x| x * k).collect()
}

/// Determinant by Gaussian elimination with exact pivots.
pub fn determinant(rows: &[Vector]) -> Scalar {
    let n = rows.len();
    let mut m: Vec<Vector> = rows.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let pinv = p.checked_inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &pinv;
            for k in col..n {
                let v = &m[col][k] * &factor;
                m[r][k] -= &v;
            }
        }
    }
    det
}

/// Rank of a matrix given by rows.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let pinv = m[r][col].checked_inv().expect("nonzero pivot");
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] * &pinv;
            for k in col..cols {
                let v = &m[r][k] * &factor;
                m[i][k] -= &v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves `sum_j x_j * cols[j] = target` for square nonsingular systems.
/// Returns `None` when the columns are dependent.
pub fn solve_columns(cols: &[Vector], target: &[Scalar]) -> Option<Vector> {
    let n = cols.len();
    let mut m: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let pinv = m[col][col].checked_inv().ok()?;
        for k in col..=n {
            m[col][k] = &m[col][k] * &pinv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for k in col..=n {
                    let v = &m[col][k] * &factor;
                    m[r][k] -= &v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square matrix given by rows.
pub fn inverse(rows: &[Vector]) -> Option<Vec<Vector>> {
    let n = rows.len();
    let cols: Vec<Vector> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let mut inv_cols = Vec::with_capacity(n);
    for i in 0..n {
        let e: Vector = (0..n)
            .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
            .collect();
        inv_cols.push(solve_columns(&cols, &e)?);
    }
    Some(
        (0..n)
            .map(|i| inv_cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> Arc<FieldSpec> {
        field_make(&[5]).unwrap()
    }

    fn elem(f: &Arc<FieldSpec>, c: &[i64]) -> Scalar {
        Scalar::from_coeffs(f, c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn field_make_rational_cases() {
        assert_eq!(field_make(&[3]).unwrap().degree(), 1);
        assert_eq!(field_make(&[2, 3, 4, 6]).unwrap().degree(), 1);
        assert!(matches!(field_make(&[1]), Err(FieldError::BadOrder(1))));
    }

    #[test]
    fn golden_ratio_min_poly() {
        let f = golden();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.min_poly(), &[rat(-1), rat(-1), rat(1)]);
    }

    #[test]
    fn heptagon_min_poly() {
        let f = field_make(&[7]).unwrap();
        assert_eq!(f.min_poly(), &[rat(1), rat(-2), rat(-1), rat(1)]);
    }

    #[test]
    fn degrees_match_totient() {
        for m in 4..=20u32 {
            if let Ok(f) = field_for_entries(&[m], 8) {
                assert_eq!(f.degree() as u32, euler_phi(2 * m) / 2, "m={m}");
                let v = f.two_cos_pi_over(m).unwrap().to_f64();
                assert!((v - 2.0 * (std::f64::consts::PI / m as f64).cos()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let err = field_make_bounded(&[17], 4).unwrap_err();
        assert!(matches!(err, FieldError::DegreeTooLarge { degree: 8, bound: 4 }));
    }

    #[test]
    fn composite_field_contains_both() {
        let f = field_make(&[5, 10]).unwrap();
        assert_eq!(f.base(), 10);
        let a = f.two_cos_pi_over(5).unwrap();
        let b = f.two_cos_pi_over(10).unwrap();
        assert_eq!(&(&a * &a) - &a, Scalar::one());
        assert_eq!(&b * &b, &Scalar::from_int(2) + &a);
        assert!(matches!(
            field_make(&[5, 7]),
            Err(FieldError::DegreeTooLarge { degree: 12, bound: 8 })
        ));
    }

    #[test]
    fn golden_examples() {
        let f = golden();
        let t = f.theta();
        assert_eq!(&t + &(&Scalar::one() - &t), Scalar::one());
        assert_eq!(&t * &t, elem(&f, &[1, 1]));
        assert_eq!(&Scalar::one() / &t, elem(&f, &[-1, 1]));
        assert_eq!(elem(&f, &[-1, 1]).sign(), 1);
        let x = &(&(&t * &t) - &(&t * &Scalar::from_int(3))) + &Scalar::one();
        assert_eq!(x, elem(&f, &[2, -2]));
        assert_eq!(x.sign(), -1);
        assert_eq!(Scalar::zero().sign(), 0);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = golden().theta();
        let b = field_make(&[7]).unwrap().theta();
        assert_eq!(a.checked_add(&b), Err(FieldError::FieldMismatch));
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn sign_needs_refinement() {
        // theta - 1.6180339887498949 is tiny but positive; 1.61803398874989485 sits above theta.
        let f = golden();
        let close = BigRational::new(
            BigInt::from(161803398874989484820458683i128),
            BigInt::from(100000000000000000000000000i128),
        );
        let a = &f.theta() - &Scalar::Rat(close);
        assert_eq!(a.sign(), 1);
        let above = BigRational::new(
            BigInt::from(161803398874989484820458684i128),
            BigInt::from(100000000000000000000000000i128),
        );
        assert_eq!((&f.theta() - &Scalar::Rat(above)).sign(), -1);
    }

    #[test]
    fn chebyshev_values() {
        let p3: Vec<i64> = chebyshev_p(3).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p3, vec![0, -3, 0, 1]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(3)],
        ];
        assert_eq!(determinant(&m), Scalar::from_int(5));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], Scalar::from_ratio(3, 5));
        assert_eq!(inv[0][1], Scalar::from_ratio(-1, 5));
        assert_eq!(rank(&m), 2);
    }

    fn arb_elem() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 3)
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let f = field_make(&[7]).unwrap();
            let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.checked_inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn sign_is_multiplicative(a in arb_elem(), b in arb_elem()) {
            let f = field_make(&[7]).unwrap();
            let (a, b) = (elem(&f, &a), elem(&f, &b));
            prop_assert_eq!(a.sign() * b.sign(), (&a * &b).sign());
            if a.sign() != 0 {
                let approx = a.to_f64();
                if approx.abs() > 1e-9 {
                    prop_assert_eq!(a.sign(), if approx > 0.0 { 1 } else { -1 });
                }
            }
        }

        #[test]
        fn rationals_agree(n1 in -50i64..50, d1 in 1i64..20, n2 in -50i64..50, d2 in 1i64..20) {
            let a = Scalar::from_ratio(n1, d1);
            let b = Scalar::from_ratio(n2, d2);
            let qa = BigRational::new(n1.into(), d1.into());
            let qb = BigRational::new(n2.into(), d2.into());
            prop_assert_eq!(&a + &b, Scalar::Rat(&qa + &qb));
            prop_assert_eq!(&a * &b, Scalar::Rat(&qa * &qb));
            prop_assert_eq!((&a - &b).sign(), sign_of(&(&qa - &qb)));
            if n2 != 0 {
                prop_assert_eq!(&a / &b, Scalar::Rat(&qa / &qb));
            }
        }
    }
}
