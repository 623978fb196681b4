//! Structural conditions on symbol pairs, the derivative identity for
//! one-variable pairs, the slice identity behind the analytic/co-analytic
//! case, and cross-validation against exact basis sweeps.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::OpError;
use crate::operators::{commutator_on_basis, semicommutator_on_basis, SweepVerdict};
use crate::poly::{LaurentPoly, MonomialIndex};
use crate::scalar::Scalar;
use crate::spaces::{decompose, is_holomorphic, is_pluriharmonic, Axis};

pub fn depends_only_on(f: &LaurentPoly, axis: Axis) -> bool {
    match axis {
        Axis::Z1 => f.depends_only_on_z1(),
        Axis::Z2 => f.depends_only_on_z2(),
    }
}

/// Polynomial in `λ1, conj(λ1), λ2, conj(λ2)` treated as independent
/// variables. Exponents are `[a, b, c, d]` for `λ1^a conj(λ1)^b λ2^c conj(λ2)^d`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiskPoly {
    coeffs: BTreeMap<[u32; 4], Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskVar {
    L1,
    L1Bar,
    L2,
    L2Bar,
}

impl DiskVar {
    fn slot(self) -> usize {
        match self {
            DiskVar::L1 => 0,
            DiskVar::L1Bar => 1,
            DiskVar::L2 => 2,
            DiskVar::L2Bar => 3,
        }
    }
}

impl DiskPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Bidisk extension of a torus polynomial: `z^n ↦ λ^n`,
    /// `conj(z)^n ↦ conj(λ)^n`.
    pub fn lift(f: &LaurentPoly) -> Self {
        let mut out = DiskPoly::zero();
        for (m, c) in f.terms() {
            let e = [
                m.i.max(0) as u32,
                (-m.i).max(0) as u32,
                m.j.max(0) as u32,
                (-m.j).max(0) as u32,
            ];
            out.add_term(e, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: [u32; 4], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: [u32; 4]) -> Scalar {
        self.coeffs.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &Scalar)> {
        self.coeffs.iter()
    }

    pub fn derivative(&self, v: DiskVar) -> Self {
        let s = v.slot();
        let mut out = DiskPoly::zero();
        for (e, c) in &self.coeffs {
            if e[s] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[s] -= 1;
            out.add_term(e2, c * &Scalar::from_integer(e[s] as i64));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = DiskPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl fmt::Display for DiskPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["l1", "conj(l1)", "l2", "conj(l2)"];
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .zip(NAMES)
                    .filter(|(n, _)| **n > 0)
                    .map(|(n, name)| {
                        if *n == 1 {
                            name.to_string()
                        } else {
                            format!("{name}^{n}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∂ᵢ∂̄ⱼ` of the bidisk extension vanishes for all `i, j`.
pub fn pluriharmonic_by_derivatives(f: &LaurentPoly) -> bool {
    let d = DiskPoly::lift(f);
    let holo = [DiskVar::L1, DiskVar::L2];
    let anti = [DiskVar::L1Bar, DiskVar::L2Bar];
    holo.iter()
        .all(|&h| anti.iter().all(|&a| d.derivative(h).derivative(a).is_zero()))
}

/// `∂1 f₊ · ∂̄1 g₋ − ∂1 g₊ · ∂̄1 f₋`.
pub fn derivative_identity_residual(f: &LaurentPoly, g: &LaurentPoly) -> Result<DiskPoly, OpError> {
    let f = decompose(f)?;
    let g = decompose(g)?;
    let d = |p: &LaurentPoly, v| DiskPoly::lift(p).derivative(v);
    let lhs = d(&f.plus, DiskVar::L1).mul(&d(&g.minus, DiskVar::L1Bar));
    let rhs = d(&g.plus, DiskVar::L1).mul(&d(&f.minus, DiskVar::L1Bar));
    Ok(lhs.sub(&rhs))
}

fn nonconstant(f: &LaurentPoly) -> LaurentPoly {
    f.filter(|m| *m != MonomialIndex::ONE)
}

/// `(α, β) ≠ (0, 0)` with `αf + βg` constant, normalized so the first
/// nonzero entry is `1`.
pub fn linear_combo_constant(f: &LaurentPoly, g: &LaurentPoly) -> Option<(Scalar, Scalar)> {
    let fp = nonconstant(f);
    let gp = nonconstant(g);
    if fp.is_zero() {
        return Some((Scalar::one(), Scalar::zero()));
    }
    if gp.is_zero() {
        return Some((Scalar::zero(), Scalar::one()));
    }
    // g' = c f' for the ratio c at the leading monomial of f'
    let (m, a) = fp.terms().next().expect("nonzero");
    let c = &gp.coeff(*m) * &a.inv().expect("nonzero coefficient");
    if c.is_zero() || fp.scale(&c) != gp {
        return None;
    }
    Some((Scalar::one(), -c.inv().expect("nonzero ratio")))
}

pub fn is_normal_symbol(f: &LaurentPoly) -> Result<bool, OpError> {
    if !is_pluriharmonic(f) {
        return Err(OpError::NotPluriharmonic(f.to_string()));
    }
    Ok(linear_combo_constant(f, &f.conjugate()).is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    A,
    B,
    C,
    I,
    II,
    III,
    E1,
    E2,
    E3,
    F1,
    F2,
    F3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::A => "A",
            Condition::B => "B",
            Condition::C => "C",
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::E1 => "e1",
            Condition::E2 => "e2",
            Condition::E3 => "e3",
            Condition::F1 => "f1",
            Condition::F2 => "f2",
            Condition::F3 => "f3",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => Condition::A,
            "B" => Condition::B,
            "C" => Condition::C,
            "I" => Condition::I,
            "II" => Condition::II,
            "III" => Condition::III,
            "e1" => Condition::E1,
            "e2" => Condition::E2,
            "e3" => Condition::E3,
            "f1" => Condition::F1,
            "f2" => Condition::F2,
            "f3" => Condition::F3,
            other => return Err(format!("unknown condition `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Commuting(Condition),
    Semicommuting(Condition),
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Commuting(c) => write!(f, "Commuting({c})"),
            Verdict::Semicommuting(c) => write!(f, "Semicommuting({c})"),
            Verdict::Neither => write!(f, "Neither"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClassification {
    pub verdict: Verdict,
    /// Every satisfied condition, in declaration order.
    pub satisfied: Vec<Condition>,
}

impl PairClassification {
    fn from_checks(checks: &[(Condition, bool)], wrap: fn(Condition) -> Verdict) -> Self {
        let satisfied: Vec<Condition> = checks.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c).collect();
        let verdict = satisfied.first().map_or(Verdict::Neither, |c| wrap(*c));
        PairClassification { verdict, satisfied }
    }

    pub fn predicts_zero(&self) -> bool {
        self.verdict != Verdict::Neither
    }

    /// `"A,C"` style label, or `"neither"`.
    pub fn label(&self) -> String {
        if self.satisfied.is_empty() {
            "neither".to_string()
        } else {
            let parts: Vec<_> = self.satisfied.iter().map(|c| c.to_string()).collect();
            parts.join(",")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Commute,
    Semicommute,
    Mixed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Commute => "commute",
            Mode::Semicommute => "semicommute",
            Mode::Mixed => "mixed",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "commute" => Ok(Mode::Commute),
            "semicommute" => Ok(Mode::Semicommute),
            "mixed" => Ok(Mode::Mixed),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// `(plus of z1, minus of z2)` and the swapped support condition.
fn support_conditions(f: &LaurentPoly, g: &LaurentPoly) -> Result<(bool, bool), OpError> {
    let f = decompose(f)?;
    let g = decompose(g)?;
    let split = |plus: Axis, minus: Axis| {
        depends_only_on(&f.plus, plus)
            && depends_only_on(&g.plus, plus)
            && depends_only_on(&f.minus, minus)
            && depends_only_on(&g.minus, minus)
    };
    Ok((split(Axis::Z1, Axis::Z2), split(Axis::Z2, Axis::Z1)))
}

pub fn classify_semicommute(f: &LaurentPoly, g: &LaurentPoly) -> Result<PairClassification, OpError> {
    let (a, b) = support_conditions(f, g)?;
    let c = f.is_constant() || g.is_constant();
    Ok(PairClassification::from_checks(
        &[(Condition::A, a), (Condition::B, b), (Condition::C, c)],
        Verdict::Semicommuting,
    ))
}

pub fn classify_commute(f: &LaurentPoly, g: &LaurentPoly) -> Result<PairClassification, OpError> {
    let (i, ii) = support_conditions(f, g)?;
    let iii = linear_combo_constant(f, g).is_some();
    Ok(PairClassification::from_checks(
        &[(Condition::I, i), (Condition::II, ii), (Condition::III, iii)],
        Verdict::Commuting,
    ))
}

/// Conditions for holomorphic `φ, ψ`: `T̂_φ T̂_ψ` commuting, semicommuting,
/// or (mixed) `T̂_φ` against `T̂_ψ̄`. In mixed mode commuting and
/// semicommuting are equivalent; the verdict is reported as `Commuting`.
pub fn classify_holo_pair(
    phi: &LaurentPoly,
    psi: &LaurentPoly,
    mode: Mode,
) -> Result<PairClassification, OpError> {
    for h in [phi, psi] {
        if !is_holomorphic(h) {
            return Err(OpError::NotHolomorphic(h.to_string()));
        }
    }
    let z1 = |h: &LaurentPoly| h.depends_only_on_z1();
    let z2 = |h: &LaurentPoly| h.depends_only_on_z2();
    let either_constant = phi.is_constant() || psi.is_constant();
    Ok(match mode {
        Mode::Commute => PairClassification::from_checks(
            &[
                (Condition::E1, z1(phi) && z1(psi)),
                (Condition::E2, z2(phi) && z2(psi)),
                (Condition::E3, linear_combo_constant(phi, psi).is_some()),
            ],
            Verdict::Commuting,
        ),
        Mode::Semicommute => PairClassification::from_checks(
            &[
                (Condition::E1, z1(phi) && z1(psi)),
                (Condition::E2, z2(phi) && z2(psi)),
                (Condition::E3, either_constant),
            ],
            Verdict::Semicommuting,
        ),
        Mode::Mixed => PairClassification::from_checks(
            &[
                (Condition::F1, z1(phi) && z2(psi)),
                (Condition::F2, z2(phi) && z1(psi)),
                (Condition::F3, either_constant),
            ],
            Verdict::Commuting,
        ),
    })
}

/// Polynomial in one torus variable, `conj(z) = 1/z`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OneVarPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

impl OneVarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(n: i64, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(n, c);
        out
    }

    fn add_term(&mut self, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&n) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &rhs.coeffs {
            out.add_term(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&Scalar::from_integer(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            out.add_term(*n, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        OneVarPoly {
            coeffs: self.coeffs.iter().map(|(n, c)| (-n, c.conj())).collect(),
        }
    }

    /// `P₂`: nonnegative powers.
    pub fn project_plus(&self) -> Self {
        OneVarPoly {
            coeffs: self.coeffs.range(0..).map(|(n, c)| (*n, c.clone())).collect(),
        }
    }

    /// `I − P₂`: negative powers.
    pub fn project_minus(&self) -> Self {
        OneVarPoly {
            coeffs: self.coeffs.range(..0).map(|(n, c)| (*n, c.clone())).collect(),
        }
    }

    /// As a torus polynomial in the given variable.
    pub fn embed(&self, axis: Axis) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(n, c)| {
            let m = match axis {
                Axis::Z1 => MonomialIndex::new(*n, 0),
                Axis::Z2 => MonomialIndex::new(0, *n),
            };
            (m, c.clone())
        }))
    }
}

impl fmt::Display for OneVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.embed(Axis::Z2))
    }
}

/// Groups a holomorphic `φ` by powers of the slicing variable:
/// `φ = Σ φᵢ zᵢ`, each `φᵢ` a polynomial in the other variable.
pub fn slice_decompose(phi: &LaurentPoly, axis: Axis) -> Result<Vec<(u32, OneVarPoly)>, OpError> {
    if !is_holomorphic(phi) {
        return Err(OpError::NotHolomorphic(phi.to_string()));
    }
    let mut slices: BTreeMap<u32, OneVarPoly> = BTreeMap::new();
    for (m, c) in phi.terms() {
        let (idx, other) = match axis {
            Axis::Z1 => (m.i, m.j),
            Axis::Z2 => (m.j, m.i),
        };
        slices
            .entry(idx as u32)
            .or_default()
            .add_term(other, c.clone());
    }
    Ok(slices.into_iter().collect())
}

fn slice(slices: &[(u32, OneVarPoly)], idx: u32) -> OneVarPoly {
    slices
        .iter()
        .find(|(i, _)| *i == idx)
        .map(|(_, p)| p.clone())
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceIdentityRecord {
    pub l: u32,
    pub k: u32,
    pub max_alpha: u32,
    pub precondition: &'static str,
    /// First `α` where the two sides differ, with `LHS − RHS`.
    pub witness: Option<(u32, OneVarPoly)>,
}

impl SliceIdentityRecord {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "k": self.k,
            "max_alpha": self.max_alpha,
            "precondition": self.precondition,
            "witness": self.witness.as_ref().map(|(a, r)| json!({"alpha": a, "residual": r.to_string()})),
        })
    }
}

/// Checks `H*_{φ̄_l} H_{ψ̄_k} = T_{φ_{l+1}} T_{ψ̄_{k+1}} − φ_{l+1} ⊗ ψ_{k+1}` on
/// `z2^α`, `α ≤ max_alpha`, where `H_h p = (I−P₂)(hp)`, `H*_h q = P₂(h̄q)`
/// and `(x ⊗ y)p = ⟨p, y⟩x`. The slices are taken along `z1`.
pub fn verify_slice_identity(
    phi: &LaurentPoly,
    psi: &LaurentPoly,
    l: u32,
    k: u32,
    max_alpha: u32,
    assert_precondition: bool,
) -> Result<SliceIdentityRecord, OpError> {
    let class = classify_holo_pair(phi, psi, Mode::Mixed)?;
    let precondition = if class.predicts_zero() {
        "verified"
    } else if assert_precondition {
        "asserted"
    } else {
        return Err(OpError::PreconditionUnverified(format!(
            "pair ({phi}, {psi}) does not satisfy a mixed-pair condition"
        )));
    };
    let phis = slice_decompose(phi, Axis::Z1)?;
    let psis = slice_decompose(psi, Axis::Z1)?;
    let phi_l = slice(&phis, l);
    let psi_k_bar = slice(&psis, k).conjugate();
    let phi_next = slice(&phis, l + 1);
    let psi_next = slice(&psis, k + 1);
    let psi_next_bar = psi_next.conjugate();

    let mut witness = None;
    for alpha in 0..=max_alpha {
        let e = OneVarPoly::monomial(alpha as i64, Scalar::one());
        let lhs = phi_l.mul(&psi_k_bar.mul(&e).project_minus()).project_plus();
        let toeplitz = phi_next.mul(&psi_next_bar.mul(&e).project_plus()).project_plus();
        let rank_one = phi_next.scale(&psi_next.coeff(alpha as i64).conj());
        let residual = lhs.sub(&toeplitz.sub(&rank_one));
        if !residual.is_zero() {
            witness = Some((alpha, residual));
            break;
        }
    }
    Ok(SliceIdentityRecord {
        l,
        k,
        max_alpha,
        precondition,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    ConfirmedCommuting,
    ConfirmedNoncommuting { witness: MonomialIndex, degree: u64 },
    InconclusiveRaiseN,
    Bug(String),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::ConfirmedCommuting => "ConfirmedCommuting",
            Outcome::ConfirmedNoncommuting { .. } => "ConfirmedNoncommuting",
            Outcome::InconclusiveRaiseN => "InconclusiveRaiseN",
            Outcome::Bug(_) => "BUG",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub classification: PairClassification,
    pub sweep: SweepVerdict,
    pub outcome: Outcome,
}

impl CrossValidation {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "classification": self.classification.verdict.to_string(),
            "satisfied": self.classification.label(),
            "sweep": self.sweep.to_json(),
            "outcome": self.outcome.name(),
        });
        if let Outcome::Bug(detail) = &self.outcome {
            v["bug"] = json!(detail);
        }
        v
    }
}

/// Classifier prediction against the exact sweep up to degree `n`.
/// `Mode::Mixed` is not a pluriharmonic-pair mode and is rejected.
pub fn cross_validate(
    f: &LaurentPoly,
    g: &LaurentPoly,
    n: u32,
    mode: Mode,
) -> Result<CrossValidation, OpError> {
    let (classification, sweep) = match mode {
        Mode::Commute => (classify_commute(f, g)?, commutator_on_basis(f, g, n)?),
        Mode::Semicommute => (classify_semicommute(f, g)?, semicommutator_on_basis(f, g, n)?),
        Mode::Mixed => {
            return Err(OpError::Domain(
                "cross validation runs in commute or semicommute mode".into(),
            ))
        }
    };
    let outcome = match (&sweep, classification.predicts_zero()) {
        (SweepVerdict::AllZero { .. }, true) => Outcome::ConfirmedCommuting,
        (SweepVerdict::AllZero { .. }, false) => Outcome::InconclusiveRaiseN,
        (SweepVerdict::Witness { basis, .. }, false) => Outcome::ConfirmedNoncommuting {
            witness: *basis,
            degree: basis.degree(),
        },
        (SweepVerdict::Witness { basis, residual }, true) => Outcome::Bug(format!(
            "{} predicted but residual {residual} on {basis}",
            classification.verdict
        )),
    };
    Ok(CrossValidation {
        classification,
        sweep,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_symbol;

    fn s(text: &str) -> LaurentPoly {
        parse_symbol(text).unwrap()
    }

    #[test]
    fn depends_only_on_examples() {
        assert!(depends_only_on(&s("z1 + 3*conj(z1)^2"), Axis::Z1));
        assert!(!depends_only_on(&s("z1*z2"), Axis::Z1));
        assert!(depends_only_on(&s("4"), Axis::Z1) && depends_only_on(&s("4"), Axis::Z2));
    }

    #[test]
    fn linear_combo_examples() {
        let (a, b) = linear_combo_constant(&s("2*z1 + conj(z2)"), &s("4*z1 + 2*conj(z2) + 7")).unwrap();
        assert_eq!((a, b), (Scalar::one(), Scalar::from_ratio(-1, 2)));
        assert!(linear_combo_constant(&s("z1"), &s("z2")).is_none());
        assert_eq!(
            linear_combo_constant(&s("3"), &s("z1 + z2")),
            Some((Scalar::one(), Scalar::zero()))
        );
        assert_eq!(
            linear_combo_constant(&s("z1"), &s("2")),
            Some((Scalar::zero(), Scalar::one()))
        );
        // partial overlap of supports is not dependence
        assert!(linear_combo_constant(&s("z1 + z2"), &s("z1")).is_none());
    }

    #[test]
    fn semicommute_examples() {
        let c = classify_semicommute(&s("z1 + conj(z2)"), &s("z1^2 + 2*conj(z2)")).unwrap();
        assert_eq!(c.verdict, Verdict::Semicommuting(Condition::A));
        assert_eq!(c.satisfied, [Condition::A]);
        let c = classify_semicommute(&s("5"), &s("z1*z2 + conj(z1)")).unwrap();
        assert_eq!(c.verdict, Verdict::Semicommuting(Condition::C));
        let c = classify_semicommute(&s("z1"), &s("conj(z1)")).unwrap();
        assert_eq!(c.verdict, Verdict::Neither);
        assert!(classify_semicommute(&s("z1*conj(z2)"), &s("1")).is_err());
    }

    #[test]
    fn commute_examples() {
        let c = classify_commute(&s("z1 + conj(z2)"), &s("3*z1 - conj(z2)")).unwrap();
        assert_eq!(c.verdict, Verdict::Commuting(Condition::I));
        let c = classify_commute(&s("z1 + conj(z1)"), &s("2*z1 + 2*conj(z1) + 9")).unwrap();
        assert_eq!(c.verdict, Verdict::Commuting(Condition::III));
        let c = classify_commute(&s("z1 + conj(z1)"), &s("z1")).unwrap();
        assert_eq!(c.verdict, Verdict::Neither);
    }

    #[test]
    fn holo_pair_examples() {
        let c = classify_holo_pair(&s("z1"), &s("z1^2 + z1"), Mode::Commute).unwrap();
        assert_eq!(c.verdict, Verdict::Commuting(Condition::E1));
        let c = classify_holo_pair(&s("z1"), &s("z2"), Mode::Mixed).unwrap();
        assert_eq!(c.verdict, Verdict::Commuting(Condition::F1));
        let c = classify_holo_pair(&s("z1*z2"), &s("z1"), Mode::Semicommute).unwrap();
        assert_eq!(c.verdict, Verdict::Neither);
        let c = classify_holo_pair(&s("z1*z2"), &s("2*z1*z2 + 1"), Mode::Commute).unwrap();
        assert_eq!(c.verdict, Verdict::Commuting(Condition::E3));
        assert!(classify_holo_pair(&s("conj(z1)"), &s("z1"), Mode::Commute).is_err());
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal_symbol(&s("z1 + conj(z1)")).unwrap());
        assert!(!is_normal_symbol(&s("z1 + 2*conj(z1)")).unwrap());
        assert!(is_normal_symbol(&s("3 - i")).unwrap());
        assert!(is_normal_symbol(&s("i*z1*z2 - i*conj(z1)*conj(z2)")).unwrap());
    }

    #[test]
    fn derivative_residual_examples() {
        assert!(derivative_identity_residual(&s("z1 + conj(z1)"), &s("2*z1 + 2*conj(z1)"))
            .unwrap()
            .is_zero());
        let r = derivative_identity_residual(&s("z1 + conj(z1)"), &s("z1")).unwrap();
        let mut expected = DiskPoly::zero();
        expected.add_term([0; 4], Scalar::from_integer(-1));
        assert_eq!(r, expected);
        assert!(derivative_identity_residual(&s("z1^2 + z1*z2"), &s("3*z2"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn formal_derivatives_match_support_rule() {
        for text in ["z1*conj(z2)", "conj(z1)*z2^2", "1 + z1 + conj(z2)", "z1*z2 + conj(z1)^3", "0"] {
            let f = s(text);
            assert_eq!(pluriharmonic_by_derivatives(&f), is_pluriharmonic(&f), "{text}");
        }
        let d = DiskPoly::lift(&s("z1^3*conj(z2)"));
        let dd = d.derivative(DiskVar::L1).derivative(DiskVar::L2Bar);
        assert_eq!(dd.coeff([2, 0, 0, 0]), Scalar::from_integer(3));
    }

    #[test]
    fn slice_examples() {
        let sl = slice_decompose(&s("z1^2*z2 + z1 + 3"), Axis::Z1).unwrap();
        assert_eq!(sl.len(), 3);
        assert_eq!(sl[0].0, 0);
        assert_eq!(sl[0].1, OneVarPoly::monomial(0, Scalar::from_integer(3)));
        assert_eq!(sl[1].1, OneVarPoly::monomial(0, Scalar::one()));
        assert_eq!(sl[2].1, OneVarPoly::monomial(1, Scalar::one()));
        assert_eq!(slice_decompose(&s("z2^2 + 1"), Axis::Z1).unwrap().len(), 1);
        assert!(slice_decompose(&LaurentPoly::zero(), Axis::Z1).unwrap().is_empty());
        assert!(slice_decompose(&s("conj(z1)"), Axis::Z1).is_err());
    }

    #[test]
    fn slice_identity_examples() {
        for l in 0..=2 {
            for k in 0..=2 {
                let r = verify_slice_identity(&s("z1"), &s("z2"), l, k, 6, false).unwrap();
                assert!(r.holds(), "l={l} k={k}: {r:?}");
                assert_eq!(r.precondition, "verified");
            }
        }
        let r = verify_slice_identity(&s("4"), &s("z1*z2 + z2"), 1, 0, 6, true).unwrap();
        assert!(r.holds());
        let r = verify_slice_identity(&s("z1*z2"), &s("z1*z2"), 0, 0, 6, true).unwrap();
        assert_eq!(r.precondition, "asserted");
        assert_eq!(r.witness.as_ref().map(|w| w.0), Some(2));
        assert!(matches!(
            verify_slice_identity(&s("z1*z2"), &s("z1*z2"), 0, 0, 6, false),
            Err(OpError::PreconditionUnverified(_))
        ));
    }

    #[test]
    fn cross_validation_examples() {
        let r = cross_validate(&s("z1 + conj(z2)"), &s("3*z1 - conj(z2)"), 6, Mode::Commute).unwrap();
        assert_eq!(r.outcome, Outcome::ConfirmedCommuting);
        let r = cross_validate(&s("z1"), &s("z2"), 2, Mode::Commute).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::ConfirmedNoncommuting {
                witness: MonomialIndex::new(-1, 0),
                degree: 1
            }
        );
        let r = cross_validate(&s("1"), &s("z1*conj(z1)*z2 + conj(z2)^3"), 4, Mode::Commute).unwrap();
        assert_eq!(r.outcome, Outcome::ConfirmedCommuting);
        let r = cross_validate(&s("z1"), &s("conj(z1)"), 2, Mode::Semicommute).unwrap();
        assert!(matches!(r.outcome, Outcome::ConfirmedNoncommuting { degree, .. } if degree <= 2));
    }
}
