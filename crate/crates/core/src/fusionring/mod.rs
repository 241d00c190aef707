//! Fusion rings: storage, axiom checks, Frobenius–Perron dimensions, the
//! `Z/p`-extension ring of the norm plane, and its plain-text serialization.
//!
//! The censuses of the gauged category and of the semidirect product live in
//! [`census`]; finite groups given by Cayley tables in [`group`].

pub mod census;
pub mod group;
mod text;

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{is_prime, make_field};

pub use census::{
    equivariantization_census, orbit_census, rank_formula, semidirect_irreps, Census, CensusEntry,
};
pub use group::{drinfeld_double_rank, FiniteGroup};

/// Basis, unit, duality and sparse structure constants `N_{ij}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    /// `rows[i * n + j]` holds the nonzero `(k, N_{ij}^k)`, sorted by `k`.
    rows: Vec<Vec<(u32, u32)>>,
}

impl FusionRing {
    /// Builds a ring from `(i, j, k, N_{ij}^k)` entries; later entries for
    /// the same triple overwrite earlier ones and zeros are dropped.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
    ) -> Result<FusionRing> {
        let n = labels.len();
        if n == 0 || unit >= n || dual.len() != n {
            return Err(Error::BadParameter("inconsistent basis data".into()));
        }
        if labels
            .iter()
            .any(|l| l.is_empty() || l.contains(char::is_whitespace))
        {
            return Err(Error::BadParameter(
                "labels must be non-empty and whitespace-free".into(),
            ));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::BadParameter("duplicate labels".into()));
        }
        if dual
            .iter()
            .enumerate()
            .any(|(i, &d)| d >= n || dual[d] != i)
        {
            return Err(Error::BadParameter("duality is not an involution".into()));
        }
        let mut ring = FusionRing {
            labels,
            unit,
            dual,
            rows: vec![Vec::new(); n * n],
        };
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::BadParameter(format!(
                    "index out of range in ({i}, {j}, {k})"
                )));
            }
            ring.set_coeff(i, j, k, c);
        }
        Ok(ring)
    }

    /// Number of basis elements.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Nonzero terms of `i ⊗ j`.
    pub fn row(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.rows[i * self.rank() + j]
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        let row = self.row(i, j);
        row.binary_search_by_key(&(k as u32), |&(k, _)| k)
            .map(|pos| row[pos].1)
            .unwrap_or(0)
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, k: usize, c: u32) {
        let n = self.rank();
        let row = &mut self.rows[i * n + j];
        match row.binary_search_by_key(&(k as u32), |&(k, _)| k) {
            Ok(pos) if c == 0 => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = c,
            Err(_) if c == 0 => {}
            Err(pos) => row.insert(pos, (k as u32, c)),
        }
    }

    /// Number of nonzero structure constants.
    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `i ⊗ i* = 1` as a single term.
    pub fn is_invertible(&self, i: usize) -> bool {
        self.row(i, self.dual[i]) == [(self.unit as u32, 1)]
    }

    /// Checks that `N_{ij}^k = 0` unless `deg k = deg i + deg j (mod m)`.
    pub fn respects_grading(&self, degrees: &[u32], modulus: u32) -> bool {
        let n = self.rank();
        degrees.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let target = (degrees[i] + degrees[j]) % modulus;
                    self.row(i, j)
                        .iter()
                        .all(|&(k, _)| degrees[k as usize] % modulus == target)
                })
            })
    }

    pub fn to_text(&self) -> String {
        text::write(self)
    }

    pub fn from_text(s: &str) -> Result<FusionRing> {
        text::read(s)
    }
}

/// The group ring `Z[Z/n]`.
pub fn group_ring_cyclic(n: usize) -> Result<FusionRing> {
    if n == 0 {
        return Err(Error::BadParameter("empty group".into()));
    }
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let dual = (0..n).map(|i| (n - i) % n).collect();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, 1)));
    FusionRing::new(labels, 0, dual, entries)
}

/// The `Z/p`-graded extension of `Vec_{F_{q^2}}`: invertibles `a ∈ F_{q^2}`
/// (as `(Z/q)²`) in degree 0 and `X_1, …, X_{p−1}` of dimension `q`, with
///
/// * `a ⊗ b = a + b`, `a ⊗ X_i = X_i ⊗ a = X_i`, `X_i* = X_{p−i}`;
/// * `X_i ⊗ X_j = q·X_{i+j}` if `i + j ≠ p`, and `Σ_a a` otherwise.
///
/// Basis order: invertibles by `(a0, a1)` (so the unit is index 0), then
/// `X_1 … X_{p−1}`.
pub fn build_extension_ring(p: u64, q: u64) -> Result<FusionRing> {
    check_pair(p, q)?;
    let (pu, qu) = (p as usize, q as usize);
    let q2 = qu * qu;
    let n = q2 + pu - 1;
    let inv_index = |a0: usize, a1: usize| a0 * qu + a1;
    let x_index = |i: usize| q2 + i - 1;

    let mut labels: Vec<String> = (0..q2)
        .map(|k| format!("[{},{}]", k / qu, k % qu))
        .collect();
    labels.extend((1..pu).map(|i| format!("X{i}")));
    let mut dual: Vec<usize> = (0..q2)
        .map(|k| inv_index((qu - k / qu) % qu, (qu - k % qu) % qu))
        .collect();
    dual.extend((1..pu).map(|i| x_index(pu - i)));

    let mut entries = Vec::new();
    for a in 0..q2 {
        for b in 0..q2 {
            let sum = inv_index((a / qu + b / qu) % qu, (a % qu + b % qu) % qu);
            entries.push((a, b, sum, 1));
        }
        for i in 1..pu {
            entries.push((a, x_index(i), x_index(i), 1));
            entries.push((x_index(i), a, x_index(i), 1));
        }
    }
    for i in 1..pu {
        for j in 1..pu {
            if i + j == pu {
                entries.extend((0..q2).map(|a| (x_index(i), x_index(j), a, 1)));
            } else {
                let k = (i + j) % pu;
                entries.push((x_index(i), x_index(j), x_index(k), q as u32));
            }
        }
    }
    debug_assert_eq!(labels.len(), n);
    FusionRing::new(labels, 0, dual, entries)
}

/// Degrees of the basis of [`build_extension_ring`] in `Z/p`.
pub fn extension_degrees(p: u64, q: u64) -> Vec<u32> {
    let q2 = (q * q) as usize;
    let mut d = vec![0u32; q2];
    d.extend(1..p as u32);
    d
}

pub(crate) fn check_pair(p: u64, q: u64) -> Result<()> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(Error::NotPrime(x));
        }
    }
    make_field(q)?;
    if p == q || !(q + 1).is_multiple_of(p) {
        return Err(Error::ExistenceViolated { p, q });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Unit,
    Associativity,
    Duality,
}

/// First counterexample found for one axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails at {:?}: {}",
            self.axiom, self.indices, self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub unit: Option<Violation>,
    pub associativity: Option<Violation>,
    pub duality: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.unit
            .as_ref()
            .or(self.associativity.as_ref())
            .or(self.duality.as_ref())
    }
}

/// Unit law, associativity on every `(i, j, k, l)`, and duality.
pub fn verify_axioms(ring: &FusionRing) -> AxiomReport {
    verify_axioms_with(ring, Exec::default())
}

pub fn verify_axioms_with(ring: &FusionRing, exec: Exec) -> AxiomReport {
    AxiomReport {
        unit: check_unit(ring),
        associativity: check_associativity(ring, exec),
        duality: check_duality(ring, exec),
    }
}

fn check_unit(ring: &FusionRing) -> Option<Violation> {
    let u = ring.unit();
    (0..ring.rank()).find_map(|j| {
        let expected = [(j as u32, 1)];
        let bad = if ring.row(u, j) != expected {
            Some((u, j))
        } else if ring.row(j, u) != expected {
            Some((j, u))
        } else {
            None
        };
        bad.map(|(a, b)| Violation {
            axiom: Axiom::Unit,
            indices: vec![a, b],
            detail: format!("{} ⊗ {} ≠ {}", ring.label(a), ring.label(b), ring.label(j)),
        })
    })
}

/// Compares `(i ⊗ j) ⊗ k` with `i ⊗ (j ⊗ k)` coefficientwise, which is the
/// quadruple identity `Σ_m N_{ij}^m N_{mk}^l = Σ_m N_{jk}^m N_{im}^l` for all
/// `l` at once.
fn check_associativity(ring: &FusionRing, exec: Exec) -> Option<Violation> {
    let n = ring.rank();
    exec.find_first(n, |i| {
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        let mut touched: Vec<u32> = Vec::new();
        for j in 0..n {
            let ij = ring.row(i, j);
            for k in 0..n {
                for &(m, a) in ij {
                    for &(l, b) in ring.row(m as usize, k) {
                        if left[l as usize] == 0 && right[l as usize] == 0 {
                            touched.push(l);
                        }
                        left[l as usize] += u64::from(a) * u64::from(b);
                    }
                }
                for &(m, a) in ring.row(j, k) {
                    for &(l, b) in ring.row(i, m as usize) {
                        if left[l as usize] == 0 && right[l as usize] == 0 {
                            touched.push(l);
                        }
                        right[l as usize] += u64::from(a) * u64::from(b);
                    }
                }
                touched.sort_unstable();
                let mut found = None;
                for &l in &touched {
                    let l = l as usize;
                    if found.is_none() && left[l] != right[l] {
                        found = Some(Violation {
                            axiom: Axiom::Associativity,
                            indices: vec![i, j, k, l],
                            detail: format!(
                                "(ij)k has {} copies of {}, i(jk) has {}",
                                left[l],
                                ring.label(l),
                                right[l]
                            ),
                        });
                    }
                    left[l] = 0;
                    right[l] = 0;
                }
                touched.clear();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    })
}

/// `N_{ij}^1 = δ_{j,i*}` and `N_{ij}^k = N_{i*k}^j = N_{kj*}^i`.
///
/// The last two are checked on nonzero entries only: both index maps are
/// permutations of all triples, so preserving the nonzero ones forces the
/// zeros to match as well.
fn check_duality(ring: &FusionRing, exec: Exec) -> Option<Violation> {
    let n = ring.rank();
    let u = ring.unit();
    exec.find_first(n, |i| {
        let di = ring.dual(i);
        for j in 0..n {
            let expected = u32::from(j == di);
            if ring.coeff(i, j, u) != expected {
                return Some(Violation {
                    axiom: Axiom::Duality,
                    indices: vec![i, j],
                    detail: format!("N_ij^1 = {} but expected {expected}", ring.coeff(i, j, u)),
                });
            }
            for &(k, c) in ring.row(i, j) {
                let k = k as usize;
                let via_left = ring.coeff(di, k, j);
                let via_right = ring.coeff(k, ring.dual(j), i);
                if via_left != c || via_right != c {
                    return Some(Violation {
                        axiom: Axiom::Duality,
                        indices: vec![i, j, k],
                        detail: format!(
                            "N_ij^k = {c}, N_(i*)k^j = {via_left}, N_k(j*)^i = {via_right}"
                        ),
                    });
                }
            }
        }
        None
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimMethod {
    /// `d(i)² = Σ_k N_{i i*}^k d(k)` iterated in the integers.
    Structural,
    /// Floating-point power iteration, rounded and then certified exactly.
    PowerIteration,
}

/// Frobenius–Perron dimensions, certified by `d(i)d(j) = Σ_k N_{ij}^k d(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDims {
    pub dims: Vec<u64>,
    pub method: DimMethod,
}

impl FpDims {
    /// `Σ d(i)²`.
    pub fn global_dim(&self) -> u64 {
        self.dims.iter().map(|d| d * d).sum()
    }
}

/// The unique positive character of `ring`, when it is integral.
///
/// A positive character of a fusion ring is its FP dimension, and rational
/// algebraic integers are integers, so an exact integer certificate is all
/// that is needed; rings with irrational dimensions yield `NotACharacter`.
pub fn fp_dims(ring: &FusionRing) -> Result<FpDims> {
    if let Some(dims) = structural_dims(ring) {
        if is_character(ring, &dims) {
            return Ok(FpDims {
                dims,
                method: DimMethod::Structural,
            });
        }
    }
    let dims = power_iteration_dims(ring)
        .ok_or_else(|| Error::NotACharacter("power iteration did not converge".into()))?;
    if is_character(ring, &dims) {
        Ok(FpDims {
            dims,
            method: DimMethod::PowerIteration,
        })
    } else {
        Err(Error::NotACharacter(
            "no integral positive character".into(),
        ))
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

fn structural_dims(ring: &FusionRing) -> Option<Vec<u64>> {
    let n = ring.rank();
    let mut dims = vec![1u64; n];
    for _ in 0..=n {
        let next: Option<Vec<u64>> = (0..n)
            .map(|i| {
                let s: u64 = ring
                    .row(i, ring.dual(i))
                    .iter()
                    .map(|&(k, c)| u64::from(c) * dims[k as usize])
                    .sum();
                let r = isqrt(s);
                (r * r == s).then_some(r)
            })
            .collect();
        let next = next?;
        if next == dims {
            return Some(dims);
        }
        dims = next;
    }
    None
}

fn power_iteration_dims(ring: &FusionRing) -> Option<Vec<u64>> {
    let n = ring.rank();
    let u = ring.unit();
    let mut v = vec![1.0f64; n];
    for _ in 0..500 {
        // w = (Σ_i L_i) v with (L_i)_{kj} = N_{ij}^k
        let mut w = vec![0.0f64; n];
        for i in 0..n {
            for (j, &vj) in v.iter().enumerate() {
                for &(k, c) in ring.row(i, j) {
                    w[k as usize] += f64::from(c) * vj;
                }
            }
        }
        let scale = w[u];
        if !(scale.is_finite() && scale > 0.0) {
            return None;
        }
        w.iter_mut().for_each(|x| *x /= scale);
        let delta = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = w;
        if delta < 1e-12 {
            break;
        }
    }
    v.iter()
        .map(|&x| (x >= 0.5 && x.is_finite()).then(|| x.round() as u64))
        .collect()
}

fn is_character(ring: &FusionRing, dims: &[u64]) -> bool {
    let n = ring.rank();
    dims.len() == n
        && dims.iter().all(|&d| d > 0)
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let rhs: u64 = ring
                    .row(i, j)
                    .iter()
                    .map(|&(k, c)| u64::from(c) * dims[k as usize])
                    .sum();
                dims[i] * dims[j] == rhs
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep_s3() -> FusionRing {
        // 1, sgn, V with V ⊗ V = 1 + sgn + V
        let labels = vec!["1".into(), "sgn".into(), "V".into()];
        let entries = vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (0, 2, 2, 1),
            (2, 0, 2, 1),
            (1, 1, 0, 1),
            (1, 2, 2, 1),
            (2, 1, 2, 1),
            (2, 2, 0, 1),
            (2, 2, 1, 1),
            (2, 2, 2, 1),
        ];
        FusionRing::new(labels, 0, vec![0, 1, 2], entries).unwrap()
    }

    fn fibonacci() -> FusionRing {
        let labels = vec!["1".into(), "tau".into()];
        let entries = vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
        ];
        FusionRing::new(labels, 0, vec![0, 1], entries).unwrap()
    }

    #[test]
    fn extension_ring_rules() {
        let ring = build_extension_ring(3, 5).unwrap();
        assert_eq!(ring.rank(), 25 + 2);
        let x1 = ring.index_of("X1").unwrap();
        let x2 = ring.index_of("X2").unwrap();
        let prod = ring.row(x1, x2);
        assert_eq!(prod.len(), 25);
        assert!(prod
            .iter()
            .enumerate()
            .all(|(a, &(k, c))| k as usize == a && c == 1));
        assert_eq!(ring.row(x1, x1), [(x2 as u32, 5)]);
        assert_eq!(ring.row(x2, x2), [(x1 as u32, 5)]);
        let a = ring.index_of("[1,2]").unwrap();
        let b = ring.index_of("[4,4]").unwrap();
        let sum = ring.index_of("[0,1]").unwrap();
        assert_eq!(ring.row(a, b), [(sum as u32, 1)]);
        assert_eq!(ring.row(a, x1), [(x1 as u32, 1)]);
        assert_eq!(ring.row(x2, a), [(x2 as u32, 1)]);
        assert_eq!(ring.dual(x1), x2);
        assert_eq!(ring.label(ring.dual(a)), "[4,3]");
    }

    #[test]
    fn extension_ring_errors() {
        assert_eq!(
            build_extension_ring(3, 7),
            Err(Error::ExistenceViolated { p: 3, q: 7 })
        );
        assert_eq!(build_extension_ring(3, 9), Err(Error::NotPrime(9)));
        assert_eq!(
            build_extension_ring(5, 5),
            Err(Error::ExistenceViolated { p: 5, q: 5 })
        );
    }

    #[test]
    fn extension_rings_are_fusion_rings() {
        for (p, q) in [(3, 2), (3, 5), (2, 3), (3, 11), (7, 13)] {
            let ring = build_extension_ring(p, q).unwrap();
            let report = verify_axioms(&ring);
            assert!(report.passed(), "({p}, {q}): {:?}", report.first_failure());
            assert!(ring.respects_grading(&extension_degrees(p, q), p as u32));
        }
    }

    #[test]
    fn mutation_breaks_associativity() {
        let mut ring = build_extension_ring(3, 5).unwrap();
        let (x1, x2) = (ring.index_of("X1").unwrap(), ring.index_of("X2").unwrap());
        ring.set_coeff(x1, x1, x2, 6);
        let report = verify_axioms(&ring);
        assert!(report.unit.is_none());
        let v = report
            .associativity
            .as_ref()
            .expect("associativity must fail");
        assert_eq!(v.axiom, Axiom::Associativity);
        assert!(!report.passed());
    }

    #[test]
    fn broken_unit_and_duality_are_reported() {
        let mut ring = group_ring_cyclic(4).unwrap();
        ring.set_coeff(0, 1, 1, 2);
        assert_eq!(verify_axioms(&ring).unit.unwrap().indices, vec![0, 1]);

        let mut ring = group_ring_cyclic(4).unwrap();
        // g1 ⊗ g3 loses its unit term.
        ring.set_coeff(1, 3, 0, 0);
        ring.set_coeff(1, 3, 2, 1);
        let report = verify_axioms(&ring);
        assert!(report.duality.is_some());
    }

    #[test]
    fn cyclic_group_ring() {
        for n in 1..8 {
            let ring = group_ring_cyclic(n).unwrap();
            assert!(verify_axioms(&ring).passed());
            let d = fp_dims(&ring).unwrap();
            assert!(d.dims.iter().all(|&x| x == 1));
            assert!((0..n).all(|i| ring.is_invertible(i)));
        }
    }

    #[test]
    fn strategies_agree() {
        let mut ring = build_extension_ring(3, 11).unwrap();
        assert_eq!(
            verify_axioms_with(&ring, Exec::Sequential),
            verify_axioms_with(&ring, Exec::Parallel)
        );
        ring.set_coeff(5, 7, 3, 2);
        assert_eq!(
            verify_axioms_with(&ring, Exec::Sequential),
            verify_axioms_with(&ring, Exec::Parallel)
        );
    }

    #[test]
    fn extension_ring_dimensions() {
        let ring = build_extension_ring(3, 5).unwrap();
        let d = fp_dims(&ring).unwrap();
        assert_eq!(d.method, DimMethod::Structural);
        assert_eq!(d.dims[ring.index_of("X1").unwrap()], 5);
        assert_eq!(d.dims[ring.index_of("X2").unwrap()], 5);
        assert_eq!(d.global_dim(), 75);
        for i in 0..ring.rank() {
            assert_eq!(d.dims[i] == 1, ring.is_invertible(i));
        }
    }

    #[test]
    fn power_iteration_fallback() {
        let ring = rep_s3();
        assert!(verify_axioms(&ring).passed());
        let d = fp_dims(&ring).unwrap();
        assert_eq!(d.method, DimMethod::PowerIteration);
        assert_eq!(d.dims, vec![1, 1, 2]);
        assert_eq!(d.global_dim(), 6);
    }

    #[test]
    fn irrational_dimensions_are_rejected() {
        let ring = fibonacci();
        assert!(verify_axioms(&ring).passed());
        assert!(matches!(fp_dims(&ring), Err(Error::NotACharacter(_))));
    }

    #[test]
    fn constructor_validation() {
        let l = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(FusionRing::new(l(&["a", "a"]), 0, vec![0, 1], []).is_err());
        assert!(FusionRing::new(l(&["a", "b c"]), 0, vec![0, 1], []).is_err());
        assert!(FusionRing::new(l(&["a", "b"]), 0, vec![1, 1], []).is_err());
        assert!(FusionRing::new(l(&["a"]), 0, vec![0], [(0, 0, 1, 1)]).is_err());
    }
}
