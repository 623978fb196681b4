//! Reproducing kernels of the bidisk, Poisson extension and Berezin
//! transforms, evaluated through truncated kernels with explicit error
//! bounds.
//!
//! With `r = |λ|` the one-variable normalized kernel `k_λ(z) = √(1−r²) /
//! (1 − conj(λ) z)` has `‖k_λ − k_λ^(M)‖ = r^{M+1}`. For the product kernel
//! `𝐤_λ = k_{λ1} ⊗ k_{λ2}` this gives
//! `‖𝐤_λ − 𝐤_λ^(M)‖ ≤ r1^{M+1} + r2^{M+1} =: ε`, and for any bounded `S`
//! `|⟨S𝐤, 𝐤⟩ − ⟨S𝐤^(M), 𝐤^(M)⟩| ≤ 2‖S‖ε`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{AnalysisError, OpError};
use crate::operators::{apply_kind, apply_toeplitz_pluri, OperatorKind};
use crate::poly::{ComplexPoly, LaurentPoly, MonomialIndex};
use crate::spaces::{is_holomorphic, project_p};

pub const DEFAULT_CAP: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    lambda1: Complex64,
    lambda2: Complex64,
}

impl DiskPoint {
    pub fn new(lambda1: Complex64, lambda2: Complex64) -> Result<Self, AnalysisError> {
        let inside = |z: Complex64| z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0;
        if inside(lambda1) && inside(lambda2) {
            Ok(DiskPoint { lambda1, lambda2 })
        } else {
            Err(AnalysisError::OutsideBidisk(
                lambda1.to_string(),
                lambda2.to_string(),
            ))
        }
    }

    pub fn origin() -> Self {
        DiskPoint {
            lambda1: Complex64::new(0.0, 0.0),
            lambda2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn lambda1(&self) -> Complex64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> Complex64 {
        self.lambda2
    }

    pub fn radius(&self) -> f64 {
        self.lambda1.norm().max(self.lambda2.norm())
    }
}

fn q(lambda: Complex64, n: i64) -> Complex64 {
    if n >= 0 {
        lambda.powi(n as i32)
    } else {
        lambda.conj().powi((-n) as i32)
    }
}

/// `𝒫[f](λ)`: each `z^n` becomes `λ^n`, each `conj(z)^n` becomes `conj(λ)^n`.
pub fn poisson_extend(f: &LaurentPoly, p: &DiskPoint) -> Complex64 {
    f.terms()
        .map(|(m, c)| c.to_complex64() * q(p.lambda1, m.i) * q(p.lambda2, m.j))
        .sum()
}

/// `𝒫` applied to a floating polynomial.
pub fn poisson_extend_complex(f: &ComplexPoly, p: &DiskPoint) -> Complex64 {
    f.terms()
        .map(|(m, c)| c * q(p.lambda1, m.i) * q(p.lambda2, m.j))
        .sum()
}

/// Geometric coefficients `scale · conj(λ)^m`, `m = 0..=degree`.
fn one_variable(lambda: Complex64, degree: u32, scale: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(degree as usize + 1);
    let mut cur = Complex64::new(scale, 0.0);
    let step = lambda.conj();
    for _ in 0..=degree {
        out.push(cur);
        cur *= step;
    }
    out
}

fn tensor(a: &[Complex64], b: &[Complex64]) -> ComplexPoly {
    let mut out = ComplexPoly::zero();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out.add_term(MonomialIndex::new(i as i64, j as i64), x * y);
        }
    }
    out
}

fn normalizer(lambda: Complex64) -> f64 {
    (1.0 - lambda.norm_sqr()).sqrt()
}

/// `𝐤_λ^(M)`, each variable truncated at degree `M`.
#[derive(Clone, Debug)]
pub struct TruncatedKernel {
    pub point: DiskPoint,
    pub degree: u32,
    pub kernel: ComplexPoly,
    /// `r1^{M+1} + r2^{M+1}`.
    pub tail_bound: f64,
}

pub fn kernel_truncated(p: &DiskPoint, degree: u32) -> TruncatedKernel {
    let k1 = one_variable(p.lambda1, degree, normalizer(p.lambda1));
    let k2 = one_variable(p.lambda2, degree, normalizer(p.lambda2));
    TruncatedKernel {
        point: *p,
        degree,
        kernel: tensor(&k1, &k2),
        tail_bound: tail(p, degree),
    }
}

fn tail(p: &DiskPoint, degree: u32) -> f64 {
    let e = degree as i32 + 1;
    p.lambda1.norm().powi(e) + p.lambda2.norm().powi(e)
}

/// Unnormalized reproducing kernel `𝐊_λ` of `H²(D²)`, truncated.
pub fn hardy_kernel(p: &DiskPoint, degree: u32) -> ComplexPoly {
    tensor(
        &one_variable(p.lambda1, degree, 1.0),
        &one_variable(p.lambda2, degree, 1.0),
    )
}

/// `𝐑_λ = 𝐊_λ + conj(𝐊_λ) − 1`, the reproducing kernel of `h²`.
pub fn pluriharmonic_kernel(p: &DiskPoint, degree: u32) -> ComplexPoly {
    let k = hardy_kernel(p, degree);
    k.add(&k.conjugate())
        .sub(&ComplexPoly::constant(Complex64::new(1.0, 0.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BerezinValue {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// Kernel truncation error plus floating-point allowance.
    pub bound: f64,
    pub degree: u32,
}

pub(crate) fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

/// Rounding allowance for an inner product of `terms` products whose
/// magnitudes sum to at most `scale`.
fn rounding_allowance(scale: f64, terms: usize) -> f64 {
    4.0 * f64::EPSILON * terms as f64 * scale.max(1.0)
}

/// `⟨S 𝐤^(M), 𝐤^(M)⟩` at a fixed truncation degree.
pub fn berezin_at_degree(
    k: &OperatorKind,
    p: &DiskPoint,
    degree: u32,
) -> Result<BerezinValue, AnalysisError> {
    let norm = k.norm_bound();
    let tk = kernel_truncated(p, degree);
    let image = apply_kind(k, &tk.kernel)?;
    let value = image.inner_product(&tk.kernel);
    let symbol_terms: usize = k.symbols().iter().map(|s| s.len()).sum();
    let terms = tk.kernel.len() + symbol_terms;
    Ok(BerezinValue {
        value,
        bound: 2.0 * norm * tk.tail_bound + rounding_allowance(norm, terms),
        degree,
    })
}

/// Smallest `M` with `2‖S‖ (r1^{M+1} + r2^{M+1}) ≤ tol`.
pub fn truncation_degree(
    norm: f64,
    p: &DiskPoint,
    tol: f64,
    cap: u32,
) -> Result<u32, AnalysisError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(AnalysisError::BadTolerance(tol));
    }
    for m in 0..=cap {
        if 2.0 * norm * tail(p, m) <= tol {
            return Ok(m);
        }
    }
    let r = p.radius();
    let needed = ((tol / (4.0 * norm)).ln() / r.ln()).ceil().max(cap as f64 + 1.0);
    Err(AnalysisError::ToleranceUnreachable {
        tol,
        needed: needed as u64,
        cap,
    })
}

pub fn berezin(k: &OperatorKind, p: &DiskPoint, tol: f64) -> Result<BerezinValue, AnalysisError> {
    berezin_with_cap(k, p, tol, DEFAULT_CAP)
}

pub fn berezin_with_cap(
    k: &OperatorKind,
    p: &DiskPoint,
    tol: f64,
    cap: u32,
) -> Result<BerezinValue, AnalysisError> {
    let m = truncation_degree(k.norm_bound(), p, tol, cap)?;
    berezin_at_degree(k, p, m)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma31Record {
    pub phi: String,
    pub psi: String,
    #[serde(serialize_with = "ser_complex")]
    pub lambda1: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub lambda2: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub lhs: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub rhs: Complex64,
    pub difference: f64,
    pub bound: f64,
    pub passed: bool,
}

fn require_z1_holomorphic(f: &LaurentPoly) -> Result<(), OpError> {
    if is_holomorphic(f) && f.depends_only_on_z1() {
        Ok(())
    } else {
        Err(OpError::Domain(format!(
            "`{f}` must be a holomorphic polynomial in z1 alone"
        )))
    }
}

/// Compares the Berezin transform of `[T̂_φ, T̂_ψ̄]` with
/// `|λ2|² (φ(λ1) conj(ψ(λ1)) − 𝒫[φψ̄](λ1))`.
pub fn check_lemma31(
    phi: &LaurentPoly,
    psi: &LaurentPoly,
    p: &DiskPoint,
    tol: f64,
) -> Result<Lemma31Record, AnalysisError> {
    require_z1_holomorphic(phi)?;
    require_z1_holomorphic(psi)?;
    let psi_bar = psi.conjugate();
    let b = berezin(&OperatorKind::commutator(phi, &psi_bar), p, tol)?;
    let at = |f: &LaurentPoly| poisson_extend(f, p);
    let rhs = p.lambda2.norm_sqr() * (at(phi) * at(psi).conj() - at(&phi.mul(&psi_bar)));
    let difference = (b.value - rhs).norm();
    Ok(Lemma31Record {
        phi: phi.to_string(),
        psi: psi.to_string(),
        lambda1: p.lambda1,
        lambda2: p.lambda2,
        lhs: b.value,
        rhs,
        difference,
        bound: b.bound,
        passed: difference <= b.bound + tol,
    })
}

/// Coefficientwise comparison of two truncated expansions.
#[derive(Clone, Debug, Serialize)]
pub struct KernelComparison {
    pub name: &'static str,
    pub degree: u32,
    /// Coefficients of total degree at most this value are compared.
    pub compared_degree: u32,
    pub compared: usize,
    pub max_deviation: f64,
    pub bound: f64,
    pub passed: bool,
}

fn compare_up_to(
    name: &'static str,
    lhs: &ComplexPoly,
    rhs: &ComplexPoly,
    degree: u32,
    compared_degree: u32,
    bound: f64,
) -> KernelComparison {
    let diff = lhs.sub(rhs);
    let support: BTreeSet<MonomialIndex> = lhs
        .support()
        .chain(rhs.support())
        .filter(|m| m.degree() <= compared_degree as u64)
        .copied()
        .collect();
    let max_deviation = support
        .iter()
        .map(|m| diff.coeff(*m).norm())
        .fold(0.0, f64::max);
    KernelComparison {
        name,
        degree,
        compared_degree,
        compared: support.len(),
        max_deviation,
        bound,
        passed: max_deviation <= bound,
    }
}

fn symbol_allowance(f: &LaurentPoly) -> f64 {
    rounding_allowance(1.0 + f.l1_upper(), 2 * (f.len() + 2))
}

/// `T̂_ψ̄ 𝐤_λ = conj(ψ(λ1)) 𝐤_λ + (ψ̄ − conj(ψ(λ1))) k_{λ1} √(1−|λ2|²)` for
/// holomorphic `ψ` in `z1`.
pub fn check_kernel_action(
    psi: &LaurentPoly,
    p: &DiskPoint,
    degree: u32,
) -> Result<KernelComparison, AnalysisError> {
    require_z1_holomorphic(psi)?;
    let tk = kernel_truncated(p, degree);
    let psi_bar = psi.conjugate().to_complex();
    let lhs = apply_toeplitz_pluri(&psi_bar, &tk.kernel)?;

    let c = poisson_extend(psi, p).conj();
    let k1 = tensor(
        &one_variable(p.lambda1, degree, normalizer(p.lambda1)),
        &[Complex64::new(1.0, 0.0)],
    );
    let shifted = psi_bar.sub(&ComplexPoly::constant(c));
    let rhs = tk
        .kernel
        .scale(&c)
        .add(&shifted.mul(&k1).scale(&Complex64::new(normalizer(p.lambda2), 0.0)));
    let compared = degree.saturating_sub(psi.degree() as u32);
    let bound = symbol_allowance(psi) + rounding_allowance(c.norm(), 4);
    Ok(compare_up_to("kernel-action", &lhs, &rhs, degree, compared, bound))
}

/// `P(φ̄ 𝐊_λ) = conj(φ(λ)) 𝐊_λ` for holomorphic `φ`.
pub fn check_kernel_invariance(
    phi: &LaurentPoly,
    p: &DiskPoint,
    degree: u32,
) -> Result<KernelComparison, AnalysisError> {
    if !is_holomorphic(phi) {
        return Err(OpError::NotHolomorphic(phi.to_string()).into());
    }
    let k = hardy_kernel(p, degree);
    let lhs = project_p(&phi.conjugate().to_complex().mul(&k));
    let c = poisson_extend(phi, p).conj();
    let rhs = k.scale(&c);
    let compared = degree.saturating_sub(phi.degree() as u32);
    let bound = symbol_allowance(phi) + rounding_allowance(c.norm(), 4);
    Ok(compare_up_to("kernel-invariance", &lhs, &rhs, degree, compared, bound))
}

/// One-variable form: `P₁⁻(ψ̄ k) = ψ̄k − conj(ψ(λ1)) k + conj(ψ(λ1)) √(1−|λ1|²)`.
pub fn check_antiholomorphic_projection(
    psi: &LaurentPoly,
    p: &DiskPoint,
    degree: u32,
) -> Result<KernelComparison, AnalysisError> {
    require_z1_holomorphic(psi)?;
    let k = tensor(
        &one_variable(p.lambda1, degree, normalizer(p.lambda1)),
        &[Complex64::new(1.0, 0.0)],
    );
    let psi_bar = psi.conjugate().to_complex();
    let product = psi_bar.mul(&k);
    let lhs = product.filter(|m| m.i <= 0);
    let c = poisson_extend(psi, p).conj();
    let rhs = product
        .sub(&k.scale(&c))
        .add(&ComplexPoly::constant(c * normalizer(p.lambda1)));
    let compared = degree.saturating_sub(psi.degree() as u32);
    let bound = symbol_allowance(psi) + rounding_allowance(c.norm(), 4);
    Ok(compare_up_to("antiholomorphic-projection", &lhs, &rhs, degree, compared, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_symbol;

    fn s(text: &str) -> LaurentPoly {
        parse_symbol(text).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(a: Complex64, b: Complex64) -> DiskPoint {
        DiskPoint::new(a, b).unwrap()
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::new(c(1.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.0, 0.0), c(0.6, 0.8)).is_err());
        assert!(DiskPoint::new(c(f64::NAN, 0.0), c(0.0, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.99, 0.0), c(0.0, -0.5)).is_ok());
    }

    #[test]
    fn poisson_examples() {
        let p = pt(c(0.3, 0.1), c(-0.2, 0.4));
        let v = poisson_extend(&s("z1*conj(z2)"), &p);
        assert!((v - p.lambda1() * p.lambda2().conj()).norm() < 1e-15);
        assert_eq!(poisson_extend(&s("7/2"), &p), c(3.5, 0.0));
        let h = s("1 + 2*z1*z2 - i*z2^2");
        let direct = c(1.0, 0.0) + 2.0 * p.lambda1() * p.lambda2()
            - c(0.0, 1.0) * p.lambda2() * p.lambda2();
        assert!((poisson_extend(&h, &p) - direct).norm() < 1e-15);
    }

    #[test]
    fn poisson_matches_kernel_quadratic_form() {
        // 𝒫[f](λ) = ⟨f 𝐤, 𝐤⟩ through multiplication without projection
        let p = pt(c(0.5, 0.0), c(0.0, -0.4));
        let tk = kernel_truncated(&p, 40);
        let f = s("z1*conj(z2)");
        let quad = f.to_complex().mul(&tk.kernel).inner_product(&tk.kernel);
        assert!((quad - poisson_extend(&f, &p)).norm() < 1e-10);
    }

    #[test]
    fn kernel_at_origin_is_one() {
        let tk = kernel_truncated(&DiskPoint::origin(), 7);
        assert_eq!(tk.kernel, ComplexPoly::constant(c(1.0, 0.0)));
        assert_eq!(tk.tail_bound, 0.0);
    }

    #[test]
    fn kernel_norm_geometric_tail() {
        let p = pt(c(0.3, 0.4), c(-0.5, 0.0));
        for m in [0, 3, 10] {
            let tk = kernel_truncated(&p, m);
            let norm = tk.kernel.inner_product(&tk.kernel).re;
            let e = 2 * (m as i32 + 1);
            let closed = (1.0 - 0.25f64.powi(e / 2)) * (1.0 - 0.25f64.powi(e / 2));
            assert!((norm - closed).abs() < 1e-14, "{m}: {norm} vs {closed}");
        }
    }

    #[test]
    fn reproducing_property_of_r_kernel() {
        let p = pt(c(0.2, -0.3), c(0.5, 0.1));
        let h = s("2 - z1 + 3*z1*z2^2 + i*conj(z1)^2*conj(z2) + conj(z2)");
        let r = pluriharmonic_kernel(&p, 3);
        let v = h.to_complex().inner_product(&r);
        assert!((v - poisson_extend(&h, &p)).norm() < 1e-14);
        // R = K + conj(K) - 1 coefficientwise
        let k = hardy_kernel(&p, 3);
        assert_eq!(r.coeff(MonomialIndex::ONE), c(1.0, 0.0));
        assert_eq!(r.coeff(MonomialIndex::new(-2, -1)), k.coeff(MonomialIndex::new(2, 1)).conj());
    }

    #[test]
    fn berezin_examples() {
        let p = pt(c(0.3, 0.2), c(-0.1, 0.5));
        let id = berezin(&OperatorKind::identity(), &p, 1e-12).unwrap();
        assert!((id.value - c(1.0, 0.0)).norm() <= id.bound);

        let b = berezin(&OperatorKind::toeplitz(s("z1")), &p, 1e-10).unwrap();
        assert!((b.value - p.lambda1()).norm() <= b.bound);
        assert!(b.bound <= 1e-10 + 1e-12);

        let p = pt(c(0.3, 0.0), c(0.0, 0.4));
        let k = OperatorKind::commutator(&s("z1"), &s("conj(z1)"));
        let b = berezin(&k, &p, 1e-10).unwrap();
        assert!((b.value - c(-0.1456, 0.0)).norm() <= 1e-10 + b.bound);
    }

    #[test]
    fn tolerance_cap_is_enforced() {
        let p = pt(c(0.999, 0.0), c(0.0, 0.0));
        let err = berezin_with_cap(&OperatorKind::identity(), &p, 1e-12, 100).unwrap_err();
        match err {
            AnalysisError::ToleranceUnreachable { needed, cap, .. } => {
                assert_eq!(cap, 100);
                assert!(needed > 100);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            berezin(&OperatorKind::identity(), &p, 0.0),
            Err(AnalysisError::BadTolerance(_))
        ));
    }

    #[test]
    fn lemma31_examples() {
        let p = pt(c(0.3, 0.0), c(0.0, 0.4));
        let r = check_lemma31(&s("z1"), &s("z1"), &p, 1e-10).unwrap();
        assert!((r.rhs - c(-0.1456, 0.0)).norm() < 1e-15);
        assert!(r.passed, "{r:?}");

        let r = check_lemma31(&s("3"), &s("z1^2"), &p, 1e-10).unwrap();
        assert!(r.rhs.norm() < 1e-15 && r.lhs.norm() <= r.bound + 1e-10);

        let p0 = pt(c(0.4, 0.1), c(0.0, 0.0));
        let r = check_lemma31(&s("z1 + z1^2"), &s("1 + 2*z1"), &p0, 1e-10).unwrap();
        assert!(r.rhs.norm() < 1e-15 && r.passed);

        assert!(matches!(
            check_lemma31(&s("z2"), &s("z1"), &p, 1e-10),
            Err(AnalysisError::Op(OpError::Domain(_)))
        ));
    }

    #[test]
    fn kernel_identities() {
        let r = check_kernel_action(&s("z1"), &pt(c(0.5, 0.0), c(0.0, 0.0)), 10).unwrap();
        assert_eq!(r.compared_degree, 9);
        assert!(r.passed, "{r:?}");
        let r = check_kernel_action(&s("2 - i*z1 + z1^3"), &pt(c(0.2, 0.3), c(-0.4, 0.1)), 14).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_kernel_action(&s("5/3"), &DiskPoint::origin(), 4).unwrap().passed);

        let r = check_kernel_invariance(&s("z1*z2"), &pt(c(0.2, 0.0), c(0.3, 0.0)), 12).unwrap();
        assert_eq!(r.compared_degree, 10);
        assert!(r.passed, "{r:?}");
        assert!(check_kernel_invariance(&s("z1 + z2^2"), &DiskPoint::origin(), 5).unwrap().passed);

        let r = check_antiholomorphic_projection(&s("z1^2 - 3*z1"), &pt(c(-0.3, 0.6), c(0.0, 0.0)), 12)
            .unwrap();
        assert!(r.passed, "{r:?}");
    }
}
