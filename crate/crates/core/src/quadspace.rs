//! Finite quadratic spaces and metric groups.
//!
//! Three space kinds are modelled, all over `F_q`:
//!
//! * the anisotropic plane `(F_{q^2}, N)`, with vectors written in the basis
//!   `{1, θ}`;
//! * the hyperbolic plane `(F_q², xy)`;
//! * the split 4-space `V ⊕ V^∨` over one of those planes, with form
//!   `Q(v, φ) = φ(v)`.
//!
//! Functionals on a plane are represented by their preimage under the hat
//! isomorphism `w ↦ ŵ = B(w, ·)`, so a vector of the split space is the
//! coordinate quadruple `(v, w)` and `Q(v, ŵ) = B(w, v)`.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::FieldCtx;
use crate::linalg::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Anisotropic,
    Hyperbolic,
    Split4,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Anisotropic => "anisotropic",
            SpaceKind::Hyperbolic => "hyperbolic",
            SpaceKind::Split4 => "split",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadSpace {
    kind: SpaceKind,
    ctx: FieldCtx,
    /// The plane whose bilinear form identifies functionals; equals `kind`
    /// for the planes themselves.
    base: SpaceKind,
}

/// The anisotropic norm plane over `ctx`.
pub fn build_anisotropic(ctx: &FieldCtx) -> QuadSpace {
    let space = QuadSpace {
        kind: SpaceKind::Anisotropic,
        ctx: *ctx,
        base: SpaceKind::Anisotropic,
    };
    assert!(space.is_anisotropic(), "norm form has a nonzero zero");
    space
}

/// The hyperbolic plane `(x, y) ↦ xy` over `ctx`.
pub fn build_hyperbolic(ctx: &FieldCtx) -> QuadSpace {
    QuadSpace {
        kind: SpaceKind::Hyperbolic,
        ctx: *ctx,
        base: SpaceKind::Hyperbolic,
    }
}

/// `F_{q^2} ⊕ F_{q^2}^∨` with the evaluation form.
pub fn build_split(ctx: &FieldCtx) -> Result<QuadSpace> {
    build_anisotropic(ctx).split()
}

impl QuadSpace {
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            SpaceKind::Split4 => 4,
            _ => 2,
        }
    }

    /// The plane underlying a split space (or the plane itself).
    pub fn base_plane(&self) -> QuadSpace {
        QuadSpace {
            kind: self.base,
            ctx: self.ctx,
            base: self.base,
        }
    }

    /// `V ⊕ V^∨` for this plane.
    pub fn split(&self) -> Result<QuadSpace> {
        if self.kind == SpaceKind::Split4 {
            return Err(Error::UnsupportedKind("split"));
        }
        if !self.ctx.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(QuadSpace {
            kind: SpaceKind::Split4,
            ctx: self.ctx,
            base: self.kind,
        })
    }

    /// Evaluates the quadratic form; `v.len()` must equal [`Self::dim`].
    pub fn form(&self, v: &[u32]) -> u32 {
        assert_eq!(v.len(), self.dim(), "vector has the wrong dimension");
        let f = &self.ctx;
        match self.kind {
            SpaceKind::Anisotropic => f.elem(v[0], v[1]).norm(),
            SpaceKind::Hyperbolic => f.mul(v[0], v[1]),
            SpaceKind::Split4 => self.base_plane().polar(&v[2..], &v[..2]),
        }
    }

    /// `B(v, w) = ½[Q(v + w) − Q(v) − Q(w)]`.
    pub fn bilinear(&self, v: &[u32], w: &[u32]) -> Result<u32> {
        if !self.ctx.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.polar(v, w))
    }

    fn polar(&self, v: &[u32], w: &[u32]) -> u32 {
        let f = &self.ctx;
        let sum: Vec<u32> = v.iter().zip(w).map(|(&a, &b)| f.add(a, b)).collect();
        let diff = f.sub(f.sub(self.form(&sum), self.form(v)), self.form(w));
        f.half(diff)
    }

    /// Gram matrix of `B` in the coordinate basis of a plane.
    pub fn gram(&self) -> Result<Mat2> {
        if self.kind == SpaceKind::Split4 {
            return Err(Error::UnsupportedKind("split"));
        }
        let e = [[1, 0], [0, 1]];
        let mut g = [[0u32; 2]; 2];
        for (i, ei) in e.iter().enumerate() {
            for (j, ej) in e.iter().enumerate() {
                g[i][j] = self.bilinear(ei, ej)?;
            }
        }
        Ok(Mat2::new(&self.ctx, g))
    }

    /// The functional `v̂ = B(v, ·)` on a plane.
    pub fn hat(&self, v: [u32; 2]) -> Result<Functional> {
        if self.kind == SpaceKind::Split4 {
            return Err(Error::UnsupportedKind("split"));
        }
        if !self.ctx.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(Functional {
            preimage: v,
            plane: *self,
        })
    }

    /// Number of vectors, `q^dim`.
    pub fn len(&self) -> usize {
        (self.ctx.q() as usize).pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `k`-th vector in lexicographic coordinate order.
    pub fn vector_at(&self, mut k: usize) -> Vec<u32> {
        let q = self.ctx.q() as usize;
        let mut v = vec![0u32; self.dim()];
        for c in v.iter_mut().rev() {
            *c = (k % q) as u32;
            k /= q;
        }
        v
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.len()).map(move |k| self.vector_at(k))
    }

    /// Number of vectors with `Q(v) = 0`, including `0`.
    pub fn isotropic_count(&self) -> usize {
        Exec::default().sum(self.len(), |k| {
            u64::from(self.form(&self.vector_at(k)) == 0)
        }) as usize
    }

    /// Exhaustive check that `Q(v) = 0` only at `v = 0`.
    pub fn is_anisotropic(&self) -> bool {
        self.isotropic_count() == 1
    }

    /// Brute-force injectivity of the hat map: distinct vectors give
    /// distinct evaluation tables on the coordinate basis.
    pub fn hat_is_injective(&self) -> Result<bool> {
        let mut tables = Vec::with_capacity(self.len());
        for v in self.vectors() {
            let phi = self.hat([v[0], v[1]])?;
            tables.push((phi.eval(&[1, 0]), phi.eval(&[0, 1])));
        }
        tables.sort_unstable();
        tables.dedup();
        Ok(tables.len() == self.len())
    }
}

/// A linear functional on a plane, stored as its hat preimage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Functional {
    preimage: [u32; 2],
    plane: QuadSpace,
}

impl Functional {
    pub fn preimage(&self) -> [u32; 2] {
        self.preimage
    }

    pub fn eval(&self, w: &[u32]) -> u32 {
        self.plane.polar(&self.preimage, w)
    }

    pub fn neg(&self) -> Functional {
        let f = &self.plane.ctx;
        Functional {
            preimage: [f.neg(self.preimage[0]), f.neg(self.preimage[1])],
            plane: self.plane,
        }
    }
}

/// A finite abelian group `∏ Z/mᵢ` with a quadratic function `t` valued in
/// `Z/modulus`; exponent `k` stands for `e^{2πik/modulus}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGroup {
    moduli: Vec<u32>,
    modulus: u32,
    t: Vec<u32>,
}

impl MetricGroup {
    pub fn from_fn(moduli: Vec<u32>, modulus: u32, t: impl Fn(&[u32]) -> u32) -> MetricGroup {
        let order: usize = moduli.iter().map(|&m| m as usize).product();
        let mut g = MetricGroup {
            moduli,
            modulus,
            t: Vec::with_capacity(order),
        };
        for k in 0..order {
            let a = g.element_at(k);
            g.t.push(t(&a) % modulus);
        }
        g
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.t.len()
    }

    pub fn element_at(&self, mut k: usize) -> Vec<u32> {
        let mut a = vec![0u32; self.moduli.len()];
        for (c, &m) in a.iter_mut().zip(&self.moduli).rev() {
            *c = (k % m as usize) as u32;
            k /= m as usize;
        }
        a
    }

    pub fn index_of(&self, a: &[u32]) -> usize {
        a.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&c, &m)| acc * m as usize + (c % m) as usize)
    }

    pub fn t(&self, a: &[u32]) -> u32 {
        self.t[self.index_of(a)]
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect()
    }

    /// `b(a, c) = t(a + c) − t(a) − t(c)` in `Z/modulus`.
    pub fn bicharacter(&self, a: &[u32], c: &[u32]) -> u32 {
        let m = u64::from(self.modulus);
        let v = u64::from(self.t(&self.add(a, c))) + 2 * m
            - u64::from(self.t(a))
            - u64::from(self.t(c));
        (v % m) as u32
    }

    fn generators(&self) -> Vec<Vec<u32>> {
        (0..self.moduli.len())
            .map(|i| {
                let mut e = vec![0u32; self.moduli.len()];
                e[i] = 1 % self.moduli[i];
                e
            })
            .collect()
    }

    /// Checks `t(a) = t(−a)`, biadditivity of `b` and non-degeneracy.
    ///
    /// Biadditivity is checked against the cyclic generators, which together
    /// with symmetry of `b` implies it everywhere; non-degeneracy then only
    /// needs `b(a, eᵢ)` for the generators `eᵢ`.
    pub fn verify(&self) -> Result<()> {
        let exec = Exec::default();
        let n = self.order();
        let gens = self.generators();
        let bad = exec.find_first(n, |k| {
            let a = self.element_at(k);
            if self.t(&a) != self.t(&self.neg(&a)) {
                return Some(format!("t(a) ≠ t(−a) at a = {a:?}"));
            }
            for e in &gens {
                let ae = self.add(&a, e);
                for j in 0..n {
                    let c = self.element_at(j);
                    let lhs = self.bicharacter(&ae, &c);
                    let rhs = (self.bicharacter(&a, &c) + self.bicharacter(e, &c)) % self.modulus;
                    if lhs != rhs {
                        return Some(format!("b not additive at a = {a:?}, c = {c:?}"));
                    }
                }
            }
            if k != 0 && gens.iter().all(|e| self.bicharacter(&a, e) == 0) {
                return Some(format!("{a:?} is in the radical of b"));
            }
            None
        });
        match bad {
            Some(msg) => Err(Error::Degenerate(msg)),
            None => Ok(()),
        }
    }
}

/// The metric group `(V, t)` of a plane, with `t(v)` the exponent `Q(v)` of a
/// `q`-th root of unity.
pub fn metric_group_of(space: &QuadSpace) -> Result<MetricGroup> {
    if space.kind == SpaceKind::Split4 {
        return Err(Error::UnsupportedKind("split"));
    }
    let q = space.ctx.q();
    let group = MetricGroup::from_fn(vec![q, q], q, |v| space.form(v));
    group.verify()?;
    Ok(group)
}
