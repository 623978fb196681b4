//! Sparse Laurent polynomials in `z1, z2` on the torus, where `conj(z) = 1/z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{Coefficient, Rational, Scalar};

/// Exponent pair `(i, j)` of `z1^i z2^j`; negative entries are powers of the
/// conjugate variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIndex {
    pub i: i64,
    pub j: i64,
}

impl MonomialIndex {
    pub const ONE: MonomialIndex = MonomialIndex { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        MonomialIndex { i, j }
    }

    pub fn degree(&self) -> u64 {
        self.i.unsigned_abs() + self.j.unsigned_abs()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.i >= 0 && self.j >= 0
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.i <= 0 && self.j <= 0
    }

    pub fn is_pluriharmonic(&self) -> bool {
        self.is_holomorphic() || self.is_antiholomorphic()
    }

    pub fn neg(&self) -> Self {
        MonomialIndex::new(-self.i, -self.j)
    }

    /// Key for the printer's graded order: total degree first, then
    /// descending `(i, j)`.
    fn graded_key(&self) -> (u64, std::cmp::Reverse<(i64, i64)>) {
        (self.degree(), std::cmp::Reverse((self.i, self.j)))
    }
}

impl Add for MonomialIndex {
    type Output = MonomialIndex;
    fn add(self, rhs: MonomialIndex) -> MonomialIndex {
        MonomialIndex::new(self.i + rhs.i, self.j + rhs.j)
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, name) in [(self.i, "z1"), (self.j, "z2")] {
            let base = if e < 0 {
                format!("conj({name})")
            } else {
                name.to_string()
            };
            match e.unsigned_abs() {
                0 => {}
                1 => parts.push(base),
                n => parts.push(format!("{base}^{n}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Finitely supported map from exponents to coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Default)]
pub struct Laurent<C: Coefficient> {
    coeffs: BTreeMap<MonomialIndex, C>,
}

pub type LaurentPoly = Laurent<Scalar>;
pub type ComplexPoly = Laurent<Complex64>;

impl<C: Coefficient> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(MonomialIndex::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(m: MonomialIndex, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MonomialIndex, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·z^m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: MonomialIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(existing) => {
                let s = existing.add_ref(&c);
                if s.is_zero() {
                    self.coeffs.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: MonomialIndex) -> C {
        self.coeffs.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, m: &MonomialIndex) -> Option<&C> {
        self.coeffs.get(m)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(MonomialIndex::ONE)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &C)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MonomialIndex> {
        self.coeffs.keys()
    }

    /// `max |i| + |j|` over the support; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|m| *m == MonomialIndex::ONE)
    }

    pub fn filter(&self, keep: impl Fn(&MonomialIndex) -> bool) -> Self {
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.coeffs.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Laurent::from_terms(self.coeffs.iter().map(|(m, c)| (*m, c.mul_ref(s))))
    }

    /// Pointwise product on the torus (exponent convolution).
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &rhs.coeffs {
                out.add_term(*ma + *mb, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugate as a function on the torus:
    /// `coeff(conj f)(-i,-j) = conj(coeff(f)(i,j))`.
    pub fn conjugate(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(m, c)| (m.neg(), c.conj())).collect(),
        }
    }

    /// `∫ f·conj(g) dσ`, by Parseval.
    pub fn inner_product(&self, rhs: &Self) -> C {
        let (small, large, swap) = if self.len() <= rhs.len() {
            (self, rhs, false)
        } else {
            (rhs, self, true)
        };
        let mut acc = C::zero();
        for (m, a) in &small.coeffs {
            if let Some(b) = large.coeffs.get(m) {
                let term = if swap {
                    b.mul_ref(&a.conj())
                } else {
                    a.mul_ref(&b.conj())
                };
                acc = acc.add_ref(&term);
            }
        }
        acc
    }

    pub fn depends_only_on_z1(&self) -> bool {
        self.coeffs.keys().all(|m| m.j == 0)
    }

    pub fn depends_only_on_z2(&self) -> bool {
        self.coeffs.keys().all(|m| m.i == 0)
    }
}

impl LaurentPoly {
    pub fn z1() -> Self {
        Self::monomial(MonomialIndex::new(1, 0), Scalar::one())
    }

    pub fn z2() -> Self {
        Self::monomial(MonomialIndex::new(0, 1), Scalar::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(Scalar::from_integer(n))
    }

    /// Sum of `|re| + |im|` over the coefficients, an upper bound on the
    /// ℓ¹ norm and hence on the sup norm over the torus.
    pub fn l1_upper(&self) -> f64 {
        self.coeffs.values().map(|c| c.abs_upper()).sum()
    }

    pub fn to_complex(&self) -> ComplexPoly {
        self.map_coeffs(|c| c.to_complex64())
    }

    /// Value at a point of the torus, `z = (e^{iθ1}, e^{iθ2})`.
    pub fn eval_torus(&self, theta1: f64, theta2: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(m, c)| {
                c.to_complex64()
                    * Complex64::from_polar(1.0, m.i as f64 * theta1 + m.j as f64 * theta2)
            })
            .sum()
    }

    /// JSON records `{"i","j","re","im"}` in canonical (map) order.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.coeffs
            .iter()
            .map(|(m, c)| TermRecord {
                i: m.i,
                j: m.j,
                re: c.re.to_string(),
                im: c.im.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, crate::error::ParseNumberError> {
        let mut p = Self::zero();
        for r in records {
            let c = Scalar::new(r.re.parse::<Rational>()?, r.im.parse::<Rational>()?);
            p.add_term(MonomialIndex::new(r.i, r.j), c);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: i64,
    pub j: i64,
    pub re: String,
    pub im: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        LaurentPoly::from_records(&records).map_err(D::Error::custom)
    }
}

/// Canonical text: terms in graded order, coefficient before monomial.
/// The output re-parses to the same polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by_key(|(m, _)| m.graded_key());
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = (c.im.is_zero() && c.re.is_negative())
                || (c.re.is_zero() && c.im.is_negative());
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == MonomialIndex::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Debug for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl<C: Coefficient> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        Laurent::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        Laurent::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        Laurent::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent::neg(self)
    }
}
