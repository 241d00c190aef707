//! The eigenvalue-ratio test for group-theoreticality, the identities behind
//! the non-group-theoretical theorem, and the existence gate.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{is_prime, make_field, pick_order_p, ExtElement, FieldCtx};
use crate::linalg::Mat2;
use crate::orthogroup::{embed_alpha_g, rotation, OrthMap, SplitOrthMap};
use crate::quadspace::{build_anisotropic, build_hyperbolic};

/// Roots of `x² − tr(M)x + det(M)` in `F_{q^2}`, in `(a0, a1)` order.
pub fn eigenvalues_2x2(m: &Mat2) -> Result<(ExtElement, ExtElement)> {
    let ctx = m.ctx();
    if !ctx.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    let tr = ctx.from_base(m.trace());
    let det = ctx.from_base(m.det());
    let disc = tr * tr - ctx.from_base(4) * det;
    let root = disc
        .sqrt()
        .expect("base-field elements are squares in F_{q^2}");
    let half = ctx.from_base(ctx.half(1));
    let (x, y) = ((tr + root) * half, (tr - root) * half);
    Ok(if x <= y { (x, y) } else { (y, x) })
}

/// Outcome of the eigenvalue-ratio test on `A = α + βδβ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTVerdict {
    pub group_theoretical: bool,
    pub mu1: ExtElement,
    pub mu2: ExtElement,
    /// `μ₁/μ₂`.
    pub ratio: ExtElement,
    /// `μ₂/μ₁`.
    pub ratio_inv: ExtElement,
    pub witness: String,
    /// `A = Id + g` when the map came from [`embed_alpha_g`].
    pub identity_check: Option<bool>,
}

impl fmt::Display for GTVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: μ₁ = {}, μ₂ = {}, μ₁/μ₂ = {} ({})",
            if self.group_theoretical {
                "group-theoretical"
            } else {
                "not group-theoretical"
            },
            self.mu1,
            self.mu2,
            self.ratio,
            self.witness
        )
    }
}

/// `α + βδβ⁻¹`.
pub fn criterion_matrix(m: &SplitOrthMap) -> Result<Mat2> {
    let beta_inv = m.beta().inverse().ok_or(Error::BetaSingular)?;
    Ok(m.alpha().add(&m.beta().mul(m.delta()).mul(&beta_inv)))
}

/// The map is group-theoretical iff `μ₁/μ₂ ∈ F_q`, tested as a Frobenius
/// fixed point.
pub fn gt_criterion(m: &SplitOrthMap) -> Result<GTVerdict> {
    let ctx = m.plane().ctx();
    if !ctx.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    let a = criterion_matrix(m)?;
    let (mu1, mu2) = eigenvalues_2x2(&a)?;
    let (Some(mu1_inv), Some(mu2_inv)) = (mu1.inv(), mu2.inv()) else {
        return Err(Error::ZeroEigenvalue);
    };
    let ratio = mu1 * mu2_inv;
    let fixed = ratio.frobenius() == ratio;
    let witness = if fixed {
        format!("σ({ratio}) = {ratio}")
    } else {
        format!("σ({ratio}) = {} ≠ {ratio}", ratio.frobenius())
    };
    let identity_check = m.source().map(|g| a == Mat2::identity(ctx).add(g));
    Ok(GTVerdict {
        group_theoretical: fixed,
        mu1,
        mu2,
        ratio,
        ratio_inv: mu2 * mu1_inv,
        witness,
        identity_check,
    })
}

/// `g = diag(a, a⁻¹)` on the hyperbolic plane `xy`, embedded like `α_g`.
pub fn hyperbolic_control(q: u64, a: u32) -> Result<SplitOrthMap> {
    let ctx = make_field(q)?;
    if u64::from(a) >= q || a <= 1 {
        return Err(Error::BadParameter(format!(
            "need a ∈ F_{q} ∖ {{0, 1}}, got {a}"
        )));
    }
    let a_inv = ctx.inv(a).expect("nonzero");
    let g = OrthMap::Linear(Mat2::diag(&ctx, a, a_inv));
    embed_alpha_g(&build_hyperbolic(&ctx), &g)
}

/// Coefficients of `(x+1)³(x−1)` over `F_q`, constant term first.
fn expand_factored(ctx: &FieldCtx) -> [u32; 5] {
    // multiply polynomials given constant-first
    let mul = |a: &[u32], b: &[u32]| {
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
            }
        }
        out
    };
    let plus = [1, 1];
    let minus = [ctx.neg(1), 1];
    let p = mul(&mul(&mul(&plus, &plus), &plus), &minus);
    [p[0], p[1], p[2], p[3], p[4]]
}

/// `x⁴ + 2x³ − 2x − 1`, constant term first.
fn quartic(ctx: &FieldCtx) -> [u32; 5] {
    [ctx.neg(1), ctx.neg(2 % ctx.q()), 0, 2 % ctx.q(), 1]
}

/// Roots of `x⁴ + 2x³ − 2x − 1` in `F_{q^2}` with multiplicity, found by an
/// exhaustive scan and repeated synthetic division.
pub fn quartic_roots(q: u64) -> Result<Vec<ExtElement>> {
    let ctx = make_field(q)?;
    let mut poly: Vec<ExtElement> = quartic(&ctx).iter().map(|&c| ctx.from_base(c)).collect();
    let mut roots = Vec::new();
    for x in ctx.elements() {
        loop {
            // Horner, keeping the quotient
            let mut quotient = vec![ctx.zero(); poly.len() - 1];
            let mut acc = ctx.zero();
            for i in (0..poly.len()).rev() {
                acc = acc * x + poly[i];
                if i > 0 {
                    quotient[i - 1] = acc;
                }
            }
            if !acc.is_zero() || poly.len() == 1 {
                break;
            }
            roots.push(x);
            poly = quotient;
        }
    }
    Ok(roots)
}

/// Checks `x⁴ + 2x³ − 2x − 1 = (x+1)³(x−1)` over `F_q` and, for `q ≤ 50`,
/// that its only roots in `F_{q^2}` are `1` and `−1` (three times).
pub fn polynomial_identity_check(q: u64) -> Result<bool> {
    let ctx = make_field(q)?;
    if expand_factored(&ctx) != quartic(&ctx) {
        return Ok(false);
    }
    if q > 50 {
        return Ok(true);
    }
    let mut roots = quartic_roots(q)?;
    roots.sort();
    let mut expected = vec![ctx.one(), -ctx.one(), -ctx.one(), -ctx.one()];
    expected.sort();
    Ok(roots == expected)
}

/// The checks of the non-group-theoretical theorem for one `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonGtReport {
    pub p: u64,
    pub q: u64,
    pub c: ExtElement,
    /// (a) `ρ_c` has eigenvalues `{c, c⁻¹}`, exchanged by Frobenius.
    pub eigenvalues_exchanged: bool,
    /// (b) `λ = (1+c)/(1+c⁻¹)` equals `c`.
    pub lambda_is_c: bool,
    /// (c) `λ ∉ F_q`.
    pub lambda_outside_base: bool,
    /// (d) the criterion rejects `α_{ρ_c}`.
    pub criterion_rejects: bool,
    /// `α + βδβ⁻¹ = Id + ρ_c`.
    pub block_identity: bool,
    pub verdict: GTVerdict,
}

impl NonGtReport {
    pub fn passed(&self) -> bool {
        self.eigenvalues_exchanged
            && self.lambda_is_c
            && self.lambda_outside_base
            && self.criterion_rejects
            && self.block_identity
    }
}

fn check_odd_primes(p: u64, q: u64) -> Result<()> {
    for x in [p, q] {
        if !is_prime(x) || x == 2 {
            return Err(Error::BadParameter(format!("{x} is not an odd prime")));
        }
    }
    Ok(())
}

pub fn nongt_theorem_suite(p: u64, q: u64) -> Result<NonGtReport> {
    check_odd_primes(p, q)?;
    if p == q || !(q + 1).is_multiple_of(p) {
        return Err(Error::ExistenceViolated { p, q });
    }
    let ctx = make_field(q)?;
    let c = pick_order_p(&ctx, p)?;
    let c_inv = c.inv().expect("norm-one elements are units");
    let rho = rotation(c)?;

    let (e1, e2) = eigenvalues_2x2(&rho.matrix())?;
    let mut expected = [c, c_inv];
    expected.sort();
    let eigenvalues_exchanged = [e1, e2] == expected && c.frobenius() == c_inv;

    let one = ctx.one();
    let lambda = (one + c) / (one + c_inv);
    let lambda_is_c = lambda == c;
    let lambda_outside_base = lambda.frobenius() != lambda;

    let verdict = gt_criterion(&embed_alpha_g(&build_anisotropic(&ctx), &rho)?)?;
    Ok(NonGtReport {
        p,
        q,
        c,
        eigenvalues_exchanged,
        lambda_is_c,
        lambda_outside_base,
        criterion_rejects: !verdict.group_theoretical,
        block_identity: verdict.identity_check == Some(true),
        verdict,
    })
}

/// Valid `(p, q)` pairs with `p < q ≤ qmax`, ascending in `q` then `p`.
pub fn odd_pairs(qmax: u64) -> Vec<(u64, u64)> {
    (3..=qmax)
        .filter(|&q| is_prime(q))
        .flat_map(|q| (3..q).filter(|&p| is_prime(p)).map(move |p| (p, q)))
        .collect()
}

/// Runs [`nongt_theorem_suite`] on every pair with `p | q+1`, `q ≤ qmax`.
pub fn nongt_sweep(qmax: u64, exec: Exec) -> Vec<Result<NonGtReport>> {
    let pairs: Vec<(u64, u64)> = odd_pairs(qmax)
        .into_iter()
        .filter(|&(p, q)| (q + 1) % p == 0)
        .collect();
    exec.map(pairs.len(), |i| nongt_theorem_suite(pairs[i].0, pairs[i].1))
}

/// Whether the dimension `p²q²` admits the construction: `p | q+1`.
pub fn existence_gate(p: u64, q: u64) -> Result<bool> {
    check_odd_primes(p, q)?;
    if p >= q {
        return Err(Error::BadParameter(format!(
            "need p < q, got p = {p}, q = {q}"
        )));
    }
    Ok((q + 1).is_multiple_of(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn in_base_field_oracle(x: ExtElement) -> bool {
        (0..x.ctx().q()).any(|a| x.ctx().from_base(a) == x)
    }

    #[test]
    fn eigenvalue_examples() {
        let ctx = make_field(7).unwrap();
        let one = ctx.one();
        assert_eq!(eigenvalues_2x2(&Mat2::identity(&ctx)).unwrap(), (one, one));
        let (x, y) = eigenvalues_2x2(&Mat2::diag(&ctx, 3, 5)).unwrap();
        assert_eq!((x, y), (ctx.from_base(3), ctx.from_base(5)));
        let ctx5 = make_field(5).unwrap();
        let c = pick_order_p(&ctx5, 3).unwrap();
        let (x, y) = eigenvalues_2x2(&rotation(c).unwrap().matrix()).unwrap();
        let mut expected = [c, c.inv().unwrap()];
        expected.sort();
        assert_eq!([x, y], expected);
        let ctx2 = make_field(2).unwrap();
        assert_eq!(
            eigenvalues_2x2(&Mat2::identity(&ctx2)),
            Err(Error::EvenCharacteristic)
        );
    }

    #[test]
    fn eigenvalues_are_roots_exhaustively() {
        for q in [3u64, 5, 7] {
            let ctx = make_field(q).unwrap();
            for k in 0..(q as usize).pow(4) {
                let m = Mat2::from_index(&ctx, k);
                let (x, y) = eigenvalues_2x2(&m).unwrap();
                let tr = ctx.from_base(m.trace());
                let det = ctx.from_base(m.det());
                for r in [x, y] {
                    assert!((r * r - tr * r + det).is_zero(), "{m}");
                }
                assert_eq!(x + y, tr);
                assert_eq!(x * y, det);
                assert!(x <= y);
            }
        }
    }

    #[test]
    fn anisotropic_embedding_is_not_gt() {
        let ctx = make_field(5).unwrap();
        let c = pick_order_p(&ctx, 3).unwrap();
        let m = embed_alpha_g(&build_anisotropic(&ctx), &rotation(c).unwrap()).unwrap();
        let v = gt_criterion(&m).unwrap();
        assert!(!v.group_theoretical);
        assert_eq!(v.ratio, c);
        assert_eq!(v.ratio * v.ratio_inv, ctx.one());
        assert_eq!(v.identity_check, Some(true));
        assert!(!in_base_field_oracle(v.ratio));
    }

    #[test]
    fn hyperbolic_examples() {
        let v = gt_criterion(&hyperbolic_control(5, 2).unwrap()).unwrap();
        assert!(v.group_theoretical);
        assert_eq!(v.ratio, make_field(5).unwrap().from_base(2));
        assert_eq!(v.identity_check, Some(true));
        let v = gt_criterion(&hyperbolic_control(7, 3).unwrap()).unwrap();
        assert!(v.group_theoretical);
        assert_eq!(v.ratio, make_field(7).unwrap().from_base(3));
        for a in [0, 1, 5, 9] {
            assert!(matches!(
                hyperbolic_control(5, a),
                Err(Error::BadParameter(_))
            ));
        }
    }

    #[test]
    fn hyperbolic_controls_are_gt() {
        for q in odd_pairs(50).iter().map(|&(_, q)| q).chain([3]) {
            for a in 2..(q as u32 - 1) {
                let v = gt_criterion(&hyperbolic_control(q, a).unwrap()).unwrap();
                assert!(v.group_theoretical, "q = {q}, a = {a}");
                assert!(in_base_field_oracle(v.ratio));
                let ctx = make_field(q).unwrap();
                let a_el = ctx.from_base(a);
                assert!(v.ratio == a_el || v.ratio == a_el.inv().unwrap());
            }
        }
    }

    #[test]
    fn minus_one_has_zero_eigenvalues() {
        let m = hyperbolic_control(7, 6).unwrap();
        assert_eq!(gt_criterion(&m), Err(Error::ZeroEigenvalue));
    }

    #[test]
    fn singular_beta() {
        let ctx = make_field(5).unwrap();
        let plane = build_anisotropic(&ctx);
        let id = SplitOrthMap::from_blocks(
            &plane,
            [
                Mat2::identity(&ctx),
                Mat2::zero(&ctx),
                Mat2::zero(&ctx),
                Mat2::identity(&ctx),
            ],
        )
        .unwrap();
        assert_eq!(gt_criterion(&id), Err(Error::BetaSingular));
    }

    #[test]
    fn polynomial_identity() {
        for q in [2u64, 3, 5, 7, 11, 13, 53, 101] {
            assert!(polynomial_identity_check(q).unwrap(), "q = {q}");
        }
        let ctx = make_field(5).unwrap();
        let mut roots = quartic_roots(5).unwrap();
        roots.sort();
        let m1 = -ctx.one();
        let mut expected = vec![ctx.one(), m1, m1, m1];
        expected.sort();
        assert_eq!(roots, expected);
        assert_eq!(polynomial_identity_check(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn theorem_suite_examples() {
        for (p, q) in [(3, 5), (5, 19)] {
            let r = nongt_theorem_suite(p, q).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(
            nongt_theorem_suite(3, 7),
            Err(Error::ExistenceViolated { p: 3, q: 7 })
        );
        assert!(matches!(
            nongt_theorem_suite(3, 2),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn theorem_suite_sweep() {
        let seq = nongt_sweep(50, Exec::Sequential);
        assert!(!seq.is_empty());
        for r in &seq {
            assert!(r.as_ref().unwrap().passed());
        }
        assert_eq!(seq, nongt_sweep(50, Exec::Parallel));
    }

    #[test]
    fn existence_examples() {
        assert_eq!(existence_gate(3, 5), Ok(true));
        assert_eq!(existence_gate(3, 7), Ok(false));
        assert_eq!(existence_gate(5, 19), Ok(true));
        assert!(matches!(existence_gate(2, 5), Err(Error::BadParameter(_))));
        assert!(matches!(existence_gate(3, 9), Err(Error::BadParameter(_))));
        assert!(matches!(existence_gate(7, 5), Err(Error::BadParameter(_))));
    }

    fn conjugation_case() -> impl Strategy<Value = (u64, u32, usize, bool)> {
        prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)]
            .prop_flat_map(|q| (Just(q), 1..=q as u32, 0..(q as usize).pow(4), any::<bool>()))
    }

    proptest! {
        #[test]
        fn verdict_invariant_under_basis_change((q, a, k, aniso) in conjugation_case()) {
            let ctx = make_field(q).unwrap();
            let p = Mat2::from_index(&ctx, k);
            prop_assume!(p.is_invertible());
            let m = if aniso {
                let c = crate::ffield::ker_norm_generator(&ctx).unwrap().pow(u64::from(a));
                prop_assume!(!c.is_one() && !(-c).is_one());
                embed_alpha_g(&build_anisotropic(&ctx), &rotation(c).unwrap()).unwrap()
            } else {
                prop_assume!(a >= 2 && a < q as u32 - 1);
                hyperbolic_control(q, a).unwrap()
            };
            let conj = m.conjugate_by_basis_change(&p).unwrap();
            let v0 = gt_criterion(&m).unwrap();
            let v1 = gt_criterion(&conj).unwrap();
            prop_assert_eq!(v0.group_theoretical, v1.group_theoretical);
            prop_assert_eq!((v0.mu1, v0.mu2), (v1.mu1, v1.mu2));
            prop_assert_eq!(v1.group_theoretical, in_base_field_oracle(v1.ratio));
            prop_assert_eq!(v1.identity_check, Some(true));
            prop_assert_eq!(v0.group_theoretical, !aniso);
        }
    }
}
