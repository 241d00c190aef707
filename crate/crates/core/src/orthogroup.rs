//! Orthogonal groups of the anisotropic and hyperbolic planes, and the block
//! embedding `g ↦ α_g` into the split orthogonal group of `V ⊕ V^∨`.
//!
//! Orthogonal maps of `(F_{q^2}, N)` are stored structurally as
//! `v ↦ c·σ^s(v)` with `N(c) = 1`; hyperbolic maps are plain matrices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{ExtElement, FieldCtx};
use crate::linalg::Mat2;
use crate::quadspace::{QuadSpace, SpaceKind};

/// A linear map on coordinate vectors.
pub trait CoordMap {
    fn dim(&self) -> usize;
    fn map_coords(&self, v: &[u32]) -> Vec<u32>;
}

impl CoordMap for Mat2 {
    fn dim(&self) -> usize {
        2
    }

    fn map_coords(&self, v: &[u32]) -> Vec<u32> {
        self.apply([v[0], v[1]]).to_vec()
    }
}

/// `true` iff `Q(map(x)) = Q(x)` for every `x`.
///
/// Planes are checked exhaustively; split spaces on the spanning set
/// `{eᵢ} ∪ {eᵢ + eⱼ}`, which determines a quadratic form.
pub fn is_orthogonal<M: CoordMap + ?Sized>(space: &QuadSpace, map: &M) -> bool {
    if map.dim() != space.dim() {
        return false;
    }
    let preserved = |x: &[u32]| space.form(&map.map_coords(x)) == space.form(x);
    if space.dim() == 2 {
        return space.vectors().all(|v| preserved(&v));
    }
    let n = space.dim();
    (0..n).all(|i| {
        (i..n).all(|j| {
            let mut x = vec![0u32; n];
            x[i] = 1;
            x[j] = if i == j { 1 } else { x[j] + 1 };
            preserved(&x)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrthMap {
    /// `v ↦ c·σ^s(v)` on the anisotropic plane, `s = reflect as u32`.
    Aniso { c: ExtElement, reflect: bool },
    /// Arbitrary matrix in the coordinate basis.
    Linear(Mat2),
}

/// `ρ_c : v ↦ cv` for `N(c) = 1`.
pub fn rotation(c: ExtElement) -> Result<OrthMap> {
    if c.norm() != 1 % c.ctx().q() {
        return Err(Error::NotNormOne);
    }
    Ok(OrthMap::Aniso { c, reflect: false })
}

/// The Frobenius `σ` viewed as an orthogonal map of the norm plane.
pub fn frobenius_map(ctx: &FieldCtx) -> OrthMap {
    OrthMap::Aniso {
        c: ctx.one(),
        reflect: true,
    }
}

impl OrthMap {
    pub fn ctx(&self) -> &FieldCtx {
        match self {
            OrthMap::Aniso { c, .. } => c.ctx(),
            OrthMap::Linear(m) => m.ctx(),
        }
    }

    pub fn apply_ext(&self, v: ExtElement) -> ExtElement {
        match *self {
            OrthMap::Aniso { c, reflect } => c * if reflect { v.frobenius() } else { v },
            OrthMap::Linear(m) => {
                let [a0, a1] = m.apply(v.coords());
                v.ctx().elem(a0, a1)
            }
        }
    }

    pub fn apply(&self, v: [u32; 2]) -> [u32; 2] {
        match self {
            OrthMap::Aniso { .. } => self.apply_ext(self.ctx().elem(v[0], v[1])).coords(),
            OrthMap::Linear(m) => m.apply(v),
        }
    }

    /// Matrix in the coordinate basis (`{1, θ}` for the norm plane).
    pub fn matrix(&self) -> Mat2 {
        match self {
            OrthMap::Aniso { c, .. } => Mat2::of_ext_map(c.ctx(), |v| self.apply_ext(v)),
            OrthMap::Linear(m) => *m,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OrthMap) -> OrthMap {
        match (*self, *other) {
            (OrthMap::Aniso { c, reflect: s }, OrthMap::Aniso { c: c2, reflect: s2 }) => {
                let moved = if s { c2.frobenius() } else { c2 };
                OrthMap::Aniso {
                    c: c * moved,
                    reflect: s ^ s2,
                }
            }
            _ => OrthMap::Linear(self.matrix().mul(&other.matrix())),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            OrthMap::Aniso { c, reflect } => c.is_one() && !reflect,
            OrthMap::Linear(m) => m.is_identity(),
        }
    }

    pub fn order(&self) -> u64 {
        self.matrix()
            .order()
            .expect("orthogonal maps are invertible")
    }

    pub fn pow(&self, e: u64) -> OrthMap {
        let mut acc = match self {
            OrthMap::Aniso { c, .. } => OrthMap::Aniso {
                c: c.ctx().one(),
                reflect: false,
            },
            OrthMap::Linear(m) => OrthMap::Linear(Mat2::identity(m.ctx())),
        };
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Dickson invariant `rank(Id − g) mod 2`: 0 on rotations, 1 on
    /// reflections. In characteristic 2 this replaces the determinant.
    pub fn dickson_invariant(&self) -> u32 {
        let m = self.matrix();
        Mat2::identity(m.ctx()).sub(&m).rank() % 2
    }

    pub fn is_rotation(&self) -> bool {
        self.dickson_invariant() == 0
    }
}

impl CoordMap for OrthMap {
    fn dim(&self) -> usize {
        2
    }

    fn map_coords(&self, v: &[u32]) -> Vec<u32> {
        self.apply([v[0], v[1]]).to_vec()
    }
}

/// All form-preserving invertible maps of a plane.
pub fn enumerate_orth(space: &QuadSpace) -> Result<Vec<OrthMap>> {
    enumerate_orth_with(space, Exec::default())
}

/// [`enumerate_orth`] with an explicit execution strategy.
///
/// Scans all `q⁴` matrices. A candidate must preserve the form on `e₁`, `e₂`
/// and `e₁ + e₂` (which determine it), and survivors are then confirmed on
/// every vector.
pub fn enumerate_orth_with(space: &QuadSpace, exec: Exec) -> Result<Vec<OrthMap>> {
    if space.kind() == SpaceKind::Split4 {
        return Err(Error::UnsupportedKind("split"));
    }
    let ctx = *space.ctx();
    let q2 = ctx.order();
    let probes: [[u32; 2]; 3] = [[1, 0], [0, 1], [1, 1]];
    let targets = probes.map(|p| space.form(&p));
    let mats = exec.flat_map(q2, |hi| {
        (0..q2)
            .map(|lo| Mat2::from_index(&ctx, hi * q2 + lo))
            .filter(|m| {
                m.is_invertible()
                    && probes
                        .iter()
                        .zip(&targets)
                        .all(|(p, &t)| space.form(&m.apply(*p)) == t)
            })
            .filter(|m| is_orthogonal(space, m))
            .collect::<Vec<_>>()
    });

    let mut out = match space.kind() {
        SpaceKind::Anisotropic => mats
            .into_iter()
            .map(|m| structured(&ctx, &m))
            .collect::<Vec<_>>(),
        _ => mats.into_iter().map(OrthMap::Linear).collect(),
    };
    out.sort_by_key(sort_key);
    Ok(out)
}

fn sort_key(g: &OrthMap) -> (bool, Mat2) {
    match g {
        OrthMap::Aniso { reflect, .. } => (*reflect, g.matrix()),
        OrthMap::Linear(m) => (false, *m),
    }
}

/// Writes an orthogonal matrix of the norm plane as `v ↦ c·σ^s(v)`.
fn structured(ctx: &FieldCtx, m: &Mat2) -> OrthMap {
    let [a0, a1] = m.apply([1, 0]);
    let c = ctx.elem(a0, a1);
    [false, true]
        .into_iter()
        .map(|reflect| OrthMap::Aniso { c, reflect })
        .find(|g| g.matrix() == *m)
        .expect("orthogonal maps of the norm plane are c·σ^s")
}

/// Generators `r` (rotation of order `n`) and `s` (reflection) of a dihedral
/// group of order `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralPresentation {
    pub n: u64,
    pub r: OrthMap,
    pub s: OrthMap,
}

/// Exhibits `r, s` with `rⁿ = s² = 1`, `srs = r⁻¹` generating exactly `group`.
pub fn dihedral_presentation(group: &[OrthMap]) -> Result<DihedralPresentation> {
    if group.is_empty() || !group.len().is_multiple_of(2) {
        return Err(Error::NotDihedral(format!("order {}", group.len())));
    }
    let n = (group.len() / 2) as u64;
    let r = *group
        .iter()
        .find(|g| g.is_rotation() && g.order() == n)
        .ok_or_else(|| Error::NotDihedral(format!("no rotation of order {n}")))?;
    let s = *group
        .iter()
        .find(|g| !g.is_rotation())
        .ok_or_else(|| Error::NotDihedral("no reflection".into()))?;

    let r_inv = r.pow(n - 1);
    if !s.compose(&s).is_identity() {
        return Err(Error::NotDihedral("s² ≠ 1".into()));
    }
    if s.compose(&r).compose(&s).matrix() != r_inv.matrix() {
        return Err(Error::NotDihedral("srs ≠ r⁻¹".into()));
    }
    let generated: BTreeSet<Mat2> = (0..n)
        .flat_map(|i| {
            let ri = r.pow(i);
            [ri.matrix(), ri.compose(&s).matrix()]
        })
        .collect();
    let given: BTreeSet<Mat2> = group.iter().map(OrthMap::matrix).collect();
    if generated.len() as u64 != 2 * n || generated != given {
        return Err(Error::NotDihedral("⟨r, s⟩ differs from the group".into()));
    }
    Ok(DihedralPresentation { n, r, s })
}

/// Every cyclic subgroup of order `p`, as sorted matrix lists.
pub fn cyclic_subgroups_of_order(group: &[OrthMap], p: u64) -> Vec<Vec<Mat2>> {
    let mut subgroups: BTreeSet<Vec<Mat2>> = BTreeSet::new();
    for g in group.iter().filter(|g| g.order() == p) {
        let mut elems: Vec<Mat2> = (0..p).map(|k| g.pow(k).matrix()).collect();
        elems.sort();
        subgroups.insert(elems);
    }
    subgroups.into_iter().collect()
}

/// A 4×4 map `(α β; γ δ)` on `V ⊕ V^∨` of a plane `V`, blocks written in the
/// coordinate basis of `V` and hat-preimage coordinates on `V^∨`.
#[derive(Clone, Copy, Debug)]
pub struct SplitOrthMap {
    plane: QuadSpace,
    alpha: Mat2,
    beta: Mat2,
    gamma: Mat2,
    delta: Mat2,
    /// The plane map this was embedded from, if any.
    source: Option<Mat2>,
}

impl PartialEq for SplitOrthMap {
    fn eq(&self, o: &Self) -> bool {
        self.plane == o.plane && self.blocks() == o.blocks()
    }
}

impl Eq for SplitOrthMap {}

impl SplitOrthMap {
    /// Assembles a map from `[α, β, γ, δ]`, rejecting non-orthogonal input.
    pub fn from_blocks(plane: &QuadSpace, blocks: [Mat2; 4]) -> Result<SplitOrthMap> {
        Self::with_source(plane, blocks, None)
    }

    fn with_source(
        plane: &QuadSpace,
        blocks: [Mat2; 4],
        source: Option<Mat2>,
    ) -> Result<SplitOrthMap> {
        let split = plane.split()?;
        let [alpha, beta, gamma, delta] = blocks;
        let m = SplitOrthMap {
            plane: *plane,
            alpha,
            beta,
            gamma,
            delta,
            source,
        };
        if !is_orthogonal(&split, &m) {
            return Err(Error::NotOrthogonal);
        }
        Ok(m)
    }

    pub fn plane(&self) -> &QuadSpace {
        &self.plane
    }

    pub fn blocks(&self) -> [Mat2; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn alpha(&self) -> &Mat2 {
        &self.alpha
    }

    pub fn beta(&self) -> &Mat2 {
        &self.beta
    }

    pub fn gamma(&self) -> &Mat2 {
        &self.gamma
    }

    pub fn delta(&self) -> &Mat2 {
        &self.delta
    }

    pub fn source(&self) -> Option<&Mat2> {
        self.source.as_ref()
    }

    /// `(v, w) ↦ (αv + βw, γv + δw)`.
    pub fn apply(&self, x: [u32; 4]) -> [u32; 4] {
        let f = self.plane.ctx();
        let (v, w) = ([x[0], x[1]], [x[2], x[3]]);
        let (av, bw) = (self.alpha.apply(v), self.beta.apply(w));
        let (gv, dw) = (self.gamma.apply(v), self.delta.apply(w));
        [
            f.add(av[0], bw[0]),
            f.add(av[1], bw[1]),
            f.add(gv[0], dw[0]),
            f.add(gv[1], dw[1]),
        ]
    }

    /// Block product `self ∘ o`.
    pub fn compose(&self, o: &SplitOrthMap) -> SplitOrthMap {
        let (a, b, c, d) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        SplitOrthMap {
            plane: self.plane,
            alpha: a.mul(&o.alpha).add(&b.mul(&o.gamma)),
            beta: a.mul(&o.beta).add(&b.mul(&o.delta)),
            gamma: c.mul(&o.alpha).add(&d.mul(&o.gamma)),
            delta: c.mul(&o.beta).add(&d.mul(&o.delta)),
            source: self.source.zip(o.source).map(|(g, h)| g.mul(&h)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity()
            && self.beta.is_zero()
            && self.gamma.is_zero()
            && self.delta.is_identity()
    }

    /// Conjugates by the isometry `(v, φ) ↦ (Pv, φ∘P⁻¹)` induced by a change
    /// of basis `P` of the plane.
    pub fn conjugate_by_basis_change(&self, p: &Mat2) -> Result<SplitOrthMap> {
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::BadParameter("singular basis change".into()))?;
        let gram = self.plane.gram()?;
        let gram_inv = gram.inverse().expect("bilinear form is non-degenerate");
        // Dual action in hat-preimage coordinates: w ↦ G⁻¹ P⁻ᵀ G w.
        let dual = gram_inv.mul(&p_inv.transpose()).mul(&gram);
        let dual_inv = dual.inverse().expect("conjugate of an invertible map");
        Self::with_source(
            &self.plane,
            [
                p.mul(&self.alpha).mul(&p_inv),
                p.mul(&self.beta).mul(&dual_inv),
                dual.mul(&self.gamma).mul(&p_inv),
                dual.mul(&self.delta).mul(&dual_inv),
            ],
            self.source.map(|g| p.mul(&g).mul(&p_inv)),
        )
    }
}

impl CoordMap for SplitOrthMap {
    fn dim(&self) -> usize {
        4
    }

    fn map_coords(&self, v: &[u32]) -> Vec<u32> {
        self.apply([v[0], v[1], v[2], v[3]]).to_vec()
    }
}

/// The embedding `α_g` of an orthogonal map `g` of `plane`:
/// `α = δ = ½(Id + g)`, `β = γ = ½(Id − g)` in hat-preimage coordinates.
///
/// It fixes every `(v, v̂)` and sends `(v, −v̂)` to `(g v, −(g v)^)`.
pub fn embed_alpha_g(plane: &QuadSpace, g: &OrthMap) -> Result<SplitOrthMap> {
    if plane.kind() == SpaceKind::Split4 {
        return Err(Error::UnsupportedKind("split"));
    }
    let ctx = plane.ctx();
    if !ctx.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if !is_orthogonal(plane, g) {
        return Err(Error::NotOrthogonal);
    }
    let m = g.matrix();
    let id = Mat2::identity(ctx);
    let half = ctx.half(1);
    let plus = id.add(&m).scale(half);
    let minus = id.sub(&m).scale(half);
    SplitOrthMap::with_source(plane, [plus, minus, minus, plus], Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{ker_norm, make_field, pick_order_p};
    use crate::quadspace::{build_anisotropic, build_hyperbolic};

    fn aniso(q: u64) -> QuadSpace {
        build_anisotropic(&make_field(q).unwrap())
    }

    fn hyper(q: u64) -> QuadSpace {
        build_hyperbolic(&make_field(q).unwrap())
    }

    /// Independent oracle: count orthogonal matrices by checking every
    /// vector, without the three-probe shortcut.
    fn brute_force_count(space: &QuadSpace) -> usize {
        let ctx = space.ctx();
        (0..ctx.order() * ctx.order())
            .map(|k| Mat2::from_index(ctx, k))
            .filter(|m| {
                m.is_invertible()
                    && space
                        .vectors()
                        .all(|v| space.form(&m.map_coords(&v)) == space.form(&v))
            })
            .count()
    }

    #[test]
    fn orthogonal_group_orders() {
        let g2 = enumerate_orth(&aniso(2)).unwrap();
        assert_eq!(g2.len(), 6);
        assert_eq!(enumerate_orth(&aniso(5)).unwrap().len(), 12);
        assert_eq!(enumerate_orth(&hyper(5)).unwrap().len(), 8);
        assert_eq!(brute_force_count(&aniso(5)), 12);
        assert_eq!(brute_force_count(&hyper(5)), 8);
        for q in [3u64, 7, 11, 13] {
            assert_eq!(enumerate_orth(&aniso(q)).unwrap().len() as u64, 2 * (q + 1));
            assert_eq!(enumerate_orth(&hyper(q)).unwrap().len() as u64, 2 * (q - 1));
        }
        assert_eq!(
            enumerate_orth(&aniso(5).split().unwrap()),
            Err(Error::UnsupportedKind("split"))
        );
    }

    #[test]
    fn strategies_agree() {
        let space = aniso(7);
        assert_eq!(
            enumerate_orth_with(&space, Exec::Sequential).unwrap(),
            enumerate_orth_with(&space, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn anisotropic_group_is_rotations_and_reflections() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let space = aniso(q);
            let ctx = *space.ctx();
            let group: BTreeSet<Mat2> = enumerate_orth(&space)
                .unwrap()
                .iter()
                .map(OrthMap::matrix)
                .collect();
            let sigma = frobenius_map(&ctx);
            let expected: BTreeSet<Mat2> = ker_norm(&ctx)
                .into_iter()
                .flat_map(|c| {
                    let r = rotation(c).unwrap();
                    [r.matrix(), r.compose(&sigma).matrix()]
                })
                .collect();
            assert_eq!(group, expected, "q = {q}");
        }
    }

    #[test]
    fn dihedral_presentations() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let pa = dihedral_presentation(&enumerate_orth(&aniso(q)).unwrap()).unwrap();
            assert_eq!(pa.n, q + 1);
            if q > 2 {
                let ph = dihedral_presentation(&enumerate_orth(&hyper(q)).unwrap()).unwrap();
                assert_eq!(ph.n, q - 1);
            }
        }
    }

    #[test]
    fn hyperbolic_maps_have_the_diagonal_shape() {
        let ctx = make_field(7).unwrap();
        let group = enumerate_orth(&hyper(7)).unwrap();
        for a in 1..7 {
            let a_inv = ctx.inv(a).unwrap();
            let rot = OrthMap::Linear(Mat2::diag(&ctx, a, a_inv));
            let refl = OrthMap::Linear(Mat2::new(&ctx, [[0, a_inv], [a, 0]]));
            assert!(group.contains(&rot));
            assert!(group.contains(&refl));
            assert!(rot.is_rotation());
            assert!(!refl.is_rotation());
        }
    }

    #[test]
    fn s3_case_dickson_classification() {
        let ctx = make_field(2).unwrap();
        let group = enumerate_orth(&aniso(2)).unwrap();
        let rotations = group.iter().filter(|g| g.dickson_invariant() == 0).count();
        assert_eq!(rotations, 3);
        assert_eq!(frobenius_map(&ctx).dickson_invariant(), 1);
        for g in &group {
            if let OrthMap::Aniso { reflect, .. } = g {
                assert_eq!(g.dickson_invariant() == 1, *reflect);
            }
        }
        // S_3 is non-abelian.
        let (r, s) = (rotation(ctx.theta()).unwrap(), frobenius_map(&ctx));
        assert_ne!(r.compose(&s).matrix(), s.compose(&r).matrix());
    }

    #[test]
    fn rotation_examples() {
        let ctx = make_field(2).unwrap();
        assert!(rotation(ctx.one()).unwrap().is_identity());
        assert_eq!(rotation(ctx.theta()).unwrap().order(), 3);

        let f5 = make_field(5).unwrap();
        let c = pick_order_p(&f5, 3).unwrap();
        let r = rotation(c).unwrap();
        assert!(!r.is_identity() && !r.compose(&r).is_identity());
        assert!(r.compose(&r).compose(&r).is_identity());
        assert_eq!(rotation(f5.from_base(2)), Err(Error::NotNormOne));
    }

    #[test]
    fn rotation_is_an_injective_homomorphism() {
        let ctx = make_field(7).unwrap();
        let kn = ker_norm(&ctx);
        let images: BTreeSet<Mat2> = kn.iter().map(|&c| rotation(c).unwrap().matrix()).collect();
        assert_eq!(images.len(), kn.len());
        for &a in &kn {
            for &b in &kn {
                let lhs = rotation(a * b).unwrap().matrix();
                let rhs = rotation(a)
                    .unwrap()
                    .matrix()
                    .mul(&rotation(b).unwrap().matrix());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn structured_composition_matches_matrices() {
        let ctx = make_field(5).unwrap();
        let group = enumerate_orth(&aniso(5)).unwrap();
        for g in &group {
            for h in &group {
                assert_eq!(g.compose(h).matrix(), g.matrix().mul(&h.matrix()));
            }
        }
        let _ = ctx;
    }

    #[test]
    fn is_orthogonal_examples() {
        let space = aniso(5);
        let ctx = *space.ctx();
        assert!(is_orthogonal(&space, &Mat2::identity(&ctx)));
        assert!(!is_orthogonal(&space, &Mat2::diag(&ctx, 2, 2)));
        assert!(is_orthogonal(&space, &frobenius_map(&ctx)));
    }

    #[test]
    fn odd_cyclic_subgroup_is_unique() {
        for (p, q) in [(3u64, 5u64), (3, 11), (5, 19), (7, 13), (3, 17)] {
            let ctx = make_field(q).unwrap();
            let group = enumerate_orth(&aniso(q)).unwrap();
            let subs = cyclic_subgroups_of_order(&group, p);
            assert_eq!(subs.len(), 1, "(p, q) = ({p}, {q})");
            let r = rotation(pick_order_p(&ctx, p).unwrap()).unwrap();
            let mut generated: Vec<Mat2> = (0..p).map(|k| r.pow(k).matrix()).collect();
            generated.sort();
            assert_eq!(subs[0], generated);
        }
    }

    #[test]
    fn embedding_of_identity() {
        let space = aniso(5);
        let ctx = *space.ctx();
        let m = embed_alpha_g(&space, &rotation(ctx.one()).unwrap()).unwrap();
        assert!(m.alpha().is_identity());
        assert!(m.beta().is_zero());
        assert!(m.gamma().is_zero());
        assert!(m.delta().is_identity());
        assert!(m.is_identity());
    }

    #[test]
    fn embedding_properties() {
        for (p, q) in [(3u64, 5u64), (3, 11), (7, 13)] {
            let space = aniso(q);
            let ctx = *space.ctx();
            let split = space.split().unwrap();
            let c = pick_order_p(&ctx, p).unwrap();
            let g = rotation(c).unwrap();
            let m = embed_alpha_g(&space, &g).unwrap();
            assert!(m.beta().is_invertible());
            for v in space.vectors() {
                let fixed = [v[0], v[1], v[0], v[1]];
                assert_eq!(m.apply(fixed), fixed);
                let gv = g.apply([v[0], v[1]]);
                let anti = [v[0], v[1], ctx.neg(v[0]), ctx.neg(v[1])];
                assert_eq!(
                    m.apply(anti),
                    [gv[0], gv[1], ctx.neg(gv[0]), ctx.neg(gv[1])]
                );
            }
            if q <= 11 {
                for x in split.vectors() {
                    assert_eq!(split.form(&m.map_coords(&x)), split.form(&x));
                }
            }
            // Homomorphism on ⟨ρ_c⟩, and injective.
            let powers: Vec<OrthMap> = (0..p).map(|k| g.pow(k)).collect();
            let images: Vec<SplitOrthMap> = powers
                .iter()
                .map(|h| embed_alpha_g(&space, h).unwrap())
                .collect();
            for (i, a) in powers.iter().enumerate() {
                for (j, b) in powers.iter().enumerate() {
                    let lhs = embed_alpha_g(&space, &a.compose(b)).unwrap();
                    assert_eq!(lhs, images[i].compose(&images[j]));
                }
            }
            let distinct: BTreeSet<_> = images.iter().map(|m| m.blocks()).collect();
            assert_eq!(distinct.len() as u64, p);
        }
    }

    #[test]
    fn embedding_of_reflections_is_orthogonal() {
        let space = aniso(7);
        for g in enumerate_orth(&space).unwrap() {
            embed_alpha_g(&space, &g).unwrap();
        }
    }

    #[test]
    fn embedding_errors() {
        let space = aniso(5);
        let ctx = *space.ctx();
        let bad = OrthMap::Linear(Mat2::diag(&ctx, 2, 2));
        assert_eq!(embed_alpha_g(&space, &bad), Err(Error::NotOrthogonal));
        let f2 = make_field(2).unwrap();
        assert_eq!(
            embed_alpha_g(&aniso(2), &rotation(f2.theta()).unwrap()),
            Err(Error::EvenCharacteristic)
        );
        let garbage = [
            Mat2::identity(&ctx),
            Mat2::identity(&ctx),
            Mat2::zero(&ctx),
            Mat2::identity(&ctx),
        ];
        assert_eq!(
            SplitOrthMap::from_blocks(&space, garbage),
            Err(Error::NotOrthogonal)
        );
    }

    #[test]
    fn basis_change_preserves_orthogonality() {
        let space = aniso(5);
        let ctx = *space.ctx();
        let g = rotation(pick_order_p(&ctx, 3).unwrap()).unwrap();
        let m = embed_alpha_g(&space, &g).unwrap();
        let p = Mat2::new(&ctx, [[1, 2], [3, 2]]);
        let conj = m.conjugate_by_basis_change(&p).unwrap();
        let split = space.split().unwrap();
        for x in split.vectors() {
            assert_eq!(split.form(&conj.map_coords(&x)), split.form(&x));
        }
        assert!(m
            .conjugate_by_basis_change(&Mat2::new(&ctx, [[1, 2], [2, 4]]))
            .is_err());
    }
}
