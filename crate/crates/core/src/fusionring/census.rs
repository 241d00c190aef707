//! Simple-object censuses.

use std::collections::BTreeMap;
use std::fmt;

use super::check_pair;
use super::group::FiniteGroup;
use crate::error::Result;
use crate::ffield::{make_field, pick_order_p, ExtElement};
use crate::orthogroup::rotation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub label: String,
    pub dim: u64,
    pub count: u64,
}

/// Simple objects grouped into families, with the declared global dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub global_dim: u64,
}

impl Census {
    pub fn rank(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// `Σ count·dim²`.
    pub fn sum_of_squares(&self) -> u64 {
        self.entries.iter().map(|e| e.count * e.dim * e.dim).sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.entries.iter().all(|e| e.dim > 0 && e.count > 0)
            && self.sum_of_squares() == self.global_dim
    }

    /// `dim ↦ number of simples of that dimension`.
    pub fn dim_multiset(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.dim).or_insert(0) += e.count;
        }
        m
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{:<12} dim {:>4}  × {}", e.label, e.dim, e.count)?;
        }
        write!(f, "rank {}, Σd² = {}", self.rank(), self.sum_of_squares())
    }
}

/// `p² + (q²−1)/p`.
pub fn rank_formula(p: u64, q: u64) -> u64 {
    p * p + (q * q - 1) / p
}

/// Orbits of `v ↦ c·v` on `F_{q^2} ∖ {0}` for the chosen `c` of order `p`,
/// each listed from its least element, ordered by least element.
pub fn orbit_census(p: u64, q: u64) -> Result<Vec<Vec<ExtElement>>> {
    check_pair(p, q)?;
    let ctx = make_field(q)?;
    let c = pick_order_p(&ctx, p)?;
    let mut seen = vec![false; ctx.order()];
    seen[0] = true;
    let mut orbits = Vec::new();
    for v in ctx.elements() {
        if seen[v.index()] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut w = v;
        while !seen[w.index()] {
            seen[w.index()] = true;
            orbit.push(w);
            w = c * w;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Simples of the `Z/p`-equivariantization of the extension category:
/// `p` invertibles `(1, χ)`, one `p`-dimensional object per orbit, and
/// `p(p−1)` objects `(X_i, χ)` of dimension `q`.
pub fn equivariantization_census(p: u64, q: u64) -> Result<Census> {
    let orbits = orbit_census(p, q)?;
    Ok(Census {
        entries: vec![
            CensusEntry {
                label: "(1,χ)".into(),
                dim: 1,
                count: p,
            },
            CensusEntry {
                label: "orbit".into(),
                dim: p,
                count: orbits.len() as u64,
            },
            CensusEntry {
                label: "(X_i,χ)".into(),
                dim: q,
                count: p * (p - 1),
            },
        ],
        global_dim: p * p * q * q,
    })
}

/// Irreps of `F_{q^2} ⋊ ⟨c⟩` by the little-group method.
///
/// `c` acts on characters `u ∈ F_q²` through `C^{−T}`, where `C` is the
/// matrix of multiplication by `c`. An orbit of size `s` has cyclic
/// stabilizer of order `p/s`, whose `p/s` characters each induce one irrep
/// of dimension `s`.
pub fn semidirect_irreps(p: u64, q: u64) -> Result<Census> {
    check_pair(p, q)?;
    let ctx = make_field(q)?;
    let c = pick_order_p(&ctx, p)?;
    let dual_action = rotation(c)?
        .matrix()
        .inverse()
        .expect("rotations are invertible")
        .transpose();

    let qu = q as usize;
    let mut seen = vec![false; qu * qu];
    let mut by_dim: BTreeMap<u64, u64> = BTreeMap::new();
    for start in 0..qu * qu {
        if seen[start] {
            continue;
        }
        let mut size = 0u64;
        let mut u = [(start / qu) as u32, (start % qu) as u32];
        loop {
            let k = u[0] as usize * qu + u[1] as usize;
            if seen[k] {
                break;
            }
            seen[k] = true;
            size += 1;
            u = dual_action.apply(u);
        }
        *by_dim.entry(size).or_insert(0) += p / size;
    }
    Ok(Census {
        entries: by_dim
            .into_iter()
            .map(|(dim, count)| CensusEntry {
                label: format!("dim-{dim}"),
                dim,
                count,
            })
            .collect(),
        global_dim: p * q * q,
    })
}

/// The group `F_{q^2} ⋊ ⟨c⟩` itself; `(v, k)` has index `k·q² + index(v)`
/// and `(v, k)(w, l) = (v + c^k w, k + l)`.
pub fn semidirect_group(p: u64, q: u64) -> Result<FiniteGroup> {
    check_pair(p, q)?;
    let ctx = make_field(q)?;
    let c = pick_order_p(&ctx, p)?;
    let q2 = ctx.order();
    let pu = p as usize;
    let powers: Vec<ExtElement> = (0..p).map(|k| c.pow(k)).collect();
    Ok(FiniteGroup::from_fn(pu * q2, |a, b| {
        let (v, k) = (ctx.element_at(a % q2), a / q2);
        let (w, l) = (ctx.element_at(b % q2), b / q2);
        ((k + l) % pu) * q2 + (v + powers[k] * w).index()
    }))
}
