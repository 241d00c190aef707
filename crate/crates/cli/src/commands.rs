//! The four subcommands, as functions from arguments to a [`RunReport`].

use std::fmt;

use anisogauge::ffield::{
    is_prime, ker_norm, make_field, make_field_bounded, pick_order_p, DEFAULT_BOUND,
};
use anisogauge::fusionring::census::semidirect_group;
use anisogauge::fusionring::{
    build_extension_ring, equivariantization_census, extension_degrees, fp_dims, rank_formula,
    semidirect_irreps, verify_axioms_with, FiniteGroup,
};
use anisogauge::gtcheck::{
    existence_gate, gt_criterion, hyperbolic_control, nongt_theorem_suite, odd_pairs,
    polynomial_identity_check,
};
use anisogauge::orthogroup::{
    cyclic_subgroups_of_order, dihedral_presentation, enumerate_orth_with, rotation,
};
use anisogauge::quadspace::{build_anisotropic, build_hyperbolic, metric_group_of};
use anisogauge::{Error, Exec};

use crate::report::{
    AxiomSummary, CensusReport, Check, DoubleRankReport, GroupOrders, Parameters, RunReport,
    Status, SweepRow, VerdictReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_EXISTENCE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Default cap on `p·q²` for `verify`.
pub const VERIFY_BOUND: u64 = 2000;
/// Default cap on `qmax` for `sweep`.
pub const SWEEP_BOUND: u64 = 50;
/// `sweep` never goes beyond this, whatever the bound.
pub const SWEEP_HARD_MAX: u64 = 200;

pub const BOUND_ENV: &str = "ANISOGAUGE_BOUND";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ExistenceViolated { .. } => EXIT_EXISTENCE,
            Error::BoundExceeded { .. } => EXIT_BOUND,
            Error::NotPrime(_) | Error::BadParameter(_) | Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// `--bound` if given, else `ANISOGAUGE_BOUND`, else `default`.
pub fn resolve_bound(flag: Option<u64>, env: Option<&str>, default: u64) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(s) => s.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "{BOUND_ENV} must be a non-negative integer, got `{s}`"
            ))
        }),
        None => Ok(default),
    }
}

fn parameters(p: u64, q: u64) -> CliResult<Parameters> {
    Ok(Parameters {
        p,
        q,
        defining_polynomial: make_field(q)?.defining_poly_string(),
    })
}

fn check_pair(p: u64, q: u64) -> CliResult<()> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(Error::NotPrime(x).into());
        }
    }
    if p == q || !(q + 1).is_multiple_of(p) {
        return Err(Error::ExistenceViolated { p, q }.into());
    }
    Ok(())
}

/// Simple objects of the gauged category; `bound` caps `q`.
pub fn census(p: u64, q: u64, bound: u64) -> CliResult<RunReport> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(Error::NotPrime(x).into());
        }
    }
    make_field_bounded(q, bound)?;
    let c = equivariantization_census(p, q)?;
    let mut report = RunReport::new("census");
    report.parameters = Some(parameters(p, q)?);
    report.push(Check::new(
        "sum of squares equals p²q²",
        c.is_consistent(),
        Some(format!("{} = {}", c.sum_of_squares(), c.global_dim)),
    ));
    report.push(Check::new(
        "rank equals p² + (q²−1)/p",
        c.rank() == rank_formula(p, q),
        Some(format!("{}", rank_formula(p, q))),
    ));
    report.census = Some(CensusReport::from(&c));
    Ok(report)
}

pub fn default_census_bound() -> u64 {
    DEFAULT_BOUND
}

/// The full suite for one pair; `bound` caps `p·q²`.
pub fn verify(p: u64, q: u64, bound: u64, exec: Exec) -> CliResult<RunReport> {
    check_pair(p, q)?;
    let order = p * q * q;
    if order > bound {
        return Err(Error::BoundExceeded {
            what: "p·q²",
            value: order,
            bound,
        }
        .into());
    }
    let ctx = make_field(q)?;
    let mut report = RunReport::new("verify");
    report.parameters = Some(parameters(p, q)?);

    report.push(Check::new(
        "defining polynomial is irreducible",
        ctx.defining_poly_is_irreducible(),
        Some(ctx.defining_poly_string()),
    ));
    let kernel = ker_norm(&ctx);
    report.push(Check::new(
        "norm-one subgroup has order q+1",
        kernel.len() as u64 == q + 1,
        Some(kernel.len().to_string()),
    ));

    let aniso = build_anisotropic(&ctx);
    let hyper = build_hyperbolic(&ctx);
    if ctx.is_odd() {
        let ok = metric_group_of(&aniso).is_ok() && metric_group_of(&hyper).is_ok();
        report.push(Check::new("metric groups are non-degenerate", ok, None));
    } else {
        report.push(Check::skipped(
            "metric groups are non-degenerate",
            "even q: no bilinear form",
        ));
    }

    let o_aniso = enumerate_orth_with(&aniso, exec)?;
    let o_hyper = enumerate_orth_with(&hyper, exec)?;
    let dihedral = |g: &[_], n: u64| dihedral_presentation(g).map(|d| d.n == n).unwrap_or(false);
    report.push(Check::new(
        "O(anisotropic) is dihedral of order 2(q+1)",
        o_aniso.len() as u64 == 2 * (q + 1) && dihedral(&o_aniso, q + 1),
        Some(o_aniso.len().to_string()),
    ));
    report.push(Check::new(
        "O(hyperbolic) is dihedral of order 2(q−1)",
        o_hyper.len() as u64 == 2 * (q - 1) && dihedral(&o_hyper, q - 1),
        Some(o_hyper.len().to_string()),
    ));
    if p == 2 {
        report.push(Check::skipped(
            "unique cyclic subgroup of order p",
            "p = 2: reflections also have order 2",
        ));
    } else {
        let c = pick_order_p(&ctx, p)?;
        let rho = rotation(c)?.matrix();
        let subgroups = cyclic_subgroups_of_order(&o_aniso, p);
        report.push(Check::new(
            "unique cyclic subgroup of order p",
            subgroups.len() == 1 && subgroups[0].contains(&rho),
            Some(format!("c = {c}")),
        ));
    }
    report.group_orders = Some(GroupOrders {
        anisotropic: o_aniso.len() as u64,
        hyperbolic: o_hyper.len() as u64,
        semidirect: order,
    });

    let ring = build_extension_ring(p, q)?;
    let axioms = verify_axioms_with(&ring, exec);
    report.push(Check::new(
        "extension ring satisfies the fusion axioms",
        axioms.passed(),
        axioms.first_failure().map(ToString::to_string),
    ));
    report.push(Check::new(
        "extension ring is Z/p-graded",
        ring.respects_grading(&extension_degrees(p, q), p as u32),
        None,
    ));
    let (dims, global) = match fp_dims(&ring) {
        Ok(d) => {
            let global = d.global_dim();
            (d.dims, global)
        }
        Err(_) => (Vec::new(), 0),
    };
    let dims_ok = dims.len() == ring.rank()
        && (0..ring.rank()).all(|i| dims[i] == if ring.is_invertible(i) { 1 } else { q })
        && global == order;
    report.push(Check::new(
        "FP dimensions are 1 and q with total p·q²",
        dims_ok,
        Some(global.to_string()),
    ));
    let mut distinct = dims.clone();
    distinct.sort_unstable();
    distinct.dedup();
    report.fusion_axioms = Some(AxiomSummary {
        basis_size: ring.rank(),
        nonzero_constants: ring.nonzero_count(),
        passed: axioms.passed(),
        first_failure: axioms.first_failure().map(ToString::to_string),
        fp_dims: distinct,
        global_dim: global,
    });

    let census = equivariantization_census(p, q)?;
    report.push(Check::new(
        "census sum of squares equals p²q²",
        census.is_consistent() && census.global_dim == p * p * q * q,
        Some(census.sum_of_squares().to_string()),
    ));
    report.push(Check::new(
        "census rank equals p² + (q²−1)/p",
        census.rank() == rank_formula(p, q),
        Some(census.rank().to_string()),
    ));
    let irreps = semidirect_irreps(p, q)?;
    let degree_zero: Vec<(u64, u64)> = census
        .entries
        .iter()
        .filter(|e| e.dim != q)
        .map(|e| (e.dim, e.count))
        .collect();
    let irreps_dims: Vec<(u64, u64)> = irreps.dim_multiset().into_iter().collect();
    report.push(Check::new(
        "semidirect irreps match the degree-0 census",
        irreps.is_consistent() && irreps_dims == degree_zero,
        None,
    ));
    let group = semidirect_group(p, q)?;
    report.push(Check::new(
        "semidirect irreps match brute-force class count",
        group.class_count() as u64 == irreps.rank() && group.abelianization_order() as u64 == p,
        Some(group.class_count().to_string()),
    ));
    report.census = Some(CensusReport::from(&census));

    report.push(Check::new(
        "(x+1)³(x−1) = x⁴+2x³−2x−1",
        polynomial_identity_check(q)?,
        None,
    ));

    if q == 2 || p == 2 {
        let why = if q == 2 {
            "even q: the split form needs odd characteristic"
        } else {
            "p = 2: the theorem assumes odd p"
        };
        report.push(Check::skipped("non-group-theoretical criterion", why));
    } else {
        let suite = nongt_theorem_suite(p, q)?;
        report.push(Check::new(
            "eigenvalues of ρ_c are c, c⁻¹",
            suite.eigenvalues_exchanged,
            None,
        ));
        report.push(Check::new(
            "λ = (1+c)/(1+c⁻¹) equals c",
            suite.lambda_is_c,
            None,
        ));
        report.push(Check::new(
            "λ is not in F_q",
            suite.lambda_outside_base,
            None,
        ));
        report.push(Check::new("α + βδβ⁻¹ = Id + g", suite.block_identity, None));
        report.push(Check::new(
            "criterion reports non-group-theoretical",
            suite.criterion_rejects,
            Some(suite.verdict.witness.clone()),
        ));
        report.gt_verdict = Some(VerdictReport::from(&suite.verdict));
    }
    if q >= 5 {
        let v = gt_criterion(&hyperbolic_control(q, 2)?)?;
        report.push(Check::new(
            "hyperbolic control is group-theoretical",
            v.group_theoretical,
            Some(v.witness),
        ));
    } else {
        report.push(Check::skipped(
            "hyperbolic control is group-theoretical",
            "needs a ∈ F_q ∖ {0, ±1}",
        ));
    }
    Ok(report)
}

/// Every odd prime pair `p < q ≤ qmax`, ordered by `q` then `p`.
pub fn sweep(qmax: u64, bound: u64, exec: Exec) -> CliResult<RunReport> {
    let cap = bound.min(SWEEP_HARD_MAX);
    if qmax > cap {
        return Err(Error::BoundExceeded {
            what: "qmax",
            value: qmax,
            bound: cap,
        }
        .into());
    }
    let pairs = odd_pairs(qmax);
    let rows: Vec<CliResult<SweepRow>> = exec.map(pairs.len(), |i| {
        let (p, q) = pairs[i];
        let exists = existence_gate(p, q)?;
        if !exists {
            return Ok(SweepRow {
                p,
                q,
                exists,
                rank: None,
                verify: Status::Skipped,
                note: Some("p ∤ q+1".into()),
            });
        }
        let (verify_status, note) = if p * q * q <= VERIFY_BOUND {
            let r = verify(p, q, VERIFY_BOUND, Exec::Sequential)?;
            (Status::from_bool(r.passed), None)
        } else {
            (Status::Skipped, Some(format!("p·q² > {VERIFY_BOUND}")))
        };
        Ok(SweepRow {
            p,
            q,
            exists,
            rank: Some(rank_formula(p, q)),
            verify: verify_status,
            note,
        })
    });
    let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
    let mut report = RunReport::new("sweep");
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| r.verify == Status::Fail)
        .map(|r| format!("({}, {})", r.p, r.q))
        .collect();
    report.push(Check::new(
        "every verified pair passes",
        failures.is_empty(),
        (!failures.is_empty()).then(|| failures.join(" ")),
    ));
    report.sweep = Some(rows);
    Ok(report)
}

/// Rank of the double of the group in a multiplication-table file.
pub fn double_rank(text: &str) -> CliResult<RunReport> {
    let group = FiniteGroup::parse(text)?;
    let rank = anisogauge::fusionring::drinfeld_double_rank(&group)?;
    let mut report = RunReport::new("double-rank");
    report.double_rank = Some(DoubleRankReport {
        order: group.order(),
        abelian: group.is_abelian(),
        class_count: group.class_count(),
        double_rank: rank,
    });
    if group.is_abelian() {
        let n = group.order() as u64;
        report.push(Check::new(
            "abelian group has rank |G|²",
            rank == n * n,
            None,
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_rank_17() {
        let r = census(3, 5, DEFAULT_BOUND).unwrap();
        let c = r.census.unwrap();
        assert_eq!((c.rank, c.sum_of_squares), (17, 225));
        assert!(r.passed);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            census(3, 7, DEFAULT_BOUND).unwrap_err().code,
            EXIT_EXISTENCE
        );
        assert!(census(3, 7, DEFAULT_BOUND)
            .unwrap_err()
            .message
            .contains("p ∤ q+1"));
        assert_eq!(census(4, 7, DEFAULT_BOUND).unwrap_err().code, EXIT_USAGE);
        assert_eq!(census(3, 11, 7).unwrap_err().code, EXIT_BOUND);
        assert_eq!(
            verify(7, 97, 2000, Exec::Sequential).unwrap_err().code,
            EXIT_BOUND
        );
        assert_eq!(
            sweep(500, SWEEP_BOUND, Exec::Sequential).unwrap_err().code,
            EXIT_BOUND
        );
        assert_eq!(
            sweep(201, 1000, Exec::Sequential).unwrap_err().code,
            EXIT_BOUND
        );
        assert_eq!(double_rank("2\n0 1\n1 1\n").unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn bound_resolution() {
        assert_eq!(resolve_bound(Some(5), Some("7"), 9), Ok(5));
        assert_eq!(resolve_bound(None, Some("7"), 9), Ok(7));
        assert_eq!(resolve_bound(None, None, 9), Ok(9));
        assert_eq!(
            resolve_bound(None, Some("x"), 9).unwrap_err().code,
            EXIT_USAGE
        );
    }

    #[test]
    fn verify_small_pairs() {
        for (p, q) in [(3, 5), (3, 2), (2, 3), (3, 11)] {
            let r = verify(p, q, VERIFY_BOUND, Exec::default()).unwrap();
            assert!(r.passed, "({p}, {q}): {:?}", r.checks);
        }
        let r = verify(3, 2, VERIFY_BOUND, Exec::default()).unwrap();
        assert!(r.checks.iter().any(|c| c.status == Status::Skipped));
        assert!(r.gt_verdict.is_none());
    }

    #[test]
    fn sweep_rows() {
        let r = sweep(20, SWEEP_BOUND, Exec::default()).unwrap();
        let rows = r.sweep.unwrap();
        let find = |p, q| rows.iter().find(|r| (r.p, r.q) == (p, q)).map(|r| r.exists);
        assert_eq!(find(3, 5), Some(true));
        assert_eq!(find(3, 7), Some(false));
        assert_eq!(find(3, 11), Some(true));
        assert_eq!(find(5, 19), Some(true));
        assert_eq!(find(3, 17), Some(true));
        let keys: Vec<(u64, u64)> = rows.iter().map(|r| (r.q, r.p)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let r = sweep(6, SWEEP_BOUND, Exec::default()).unwrap();
        let pairs: Vec<(u64, u64)> = r.sweep.unwrap().iter().map(|r| (r.p, r.q)).collect();
        assert_eq!(pairs, vec![(3, 5)]);
    }
}
