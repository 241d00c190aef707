//! 2×2 matrices over `F_q`.

use std::fmt;

use crate::ffield::{ExtElement, FieldCtx};

/// A 2×2 matrix over `F_q`, row-major, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    e: [[u32; 2]; 2],
    ctx: FieldCtx,
}

impl Mat2 {
    pub fn new(ctx: &FieldCtx, e: [[u32; 2]; 2]) -> Mat2 {
        let q = ctx.q();
        Mat2 {
            e: [[e[0][0] % q, e[0][1] % q], [e[1][0] % q, e[1][1] % q]],
            ctx: *ctx,
        }
    }

    pub fn identity(ctx: &FieldCtx) -> Mat2 {
        Mat2::new(ctx, [[1, 0], [0, 1]])
    }

    pub fn zero(ctx: &FieldCtx) -> Mat2 {
        Mat2::new(ctx, [[0, 0], [0, 0]])
    }

    pub fn diag(ctx: &FieldCtx, a: u32, d: u32) -> Mat2 {
        Mat2::new(ctx, [[a, 0], [0, d]])
    }

    /// Matrix with the given columns.
    pub fn from_columns(ctx: &FieldCtx, c0: [u32; 2], c1: [u32; 2]) -> Mat2 {
        Mat2::new(ctx, [[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    /// The `k`-th of the `q⁴` matrices, entries read as base-`q` digits.
    pub fn from_index(ctx: &FieldCtx, mut k: usize) -> Mat2 {
        let q = ctx.q() as usize;
        let mut digits = [0u32; 4];
        for d in digits.iter_mut().rev() {
            *d = (k % q) as u32;
            k /= q;
        }
        Mat2::new(ctx, [[digits[0], digits[1]], [digits[2], digits[3]]])
    }

    /// Matrix of `v ↦ f(v)` in the basis `{1, θ}` of `F_{q^2}`.
    pub fn of_ext_map(ctx: &FieldCtx, f: impl Fn(ExtElement) -> ExtElement) -> Mat2 {
        Mat2::from_columns(ctx, f(ctx.one()).coords(), f(ctx.theta()).coords())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn entries(&self) -> [[u32; 2]; 2] {
        self.e
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.e[r][c]
    }

    pub fn det(&self) -> u32 {
        let f = &self.ctx;
        f.sub(
            f.mul(self.e[0][0], self.e[1][1]),
            f.mul(self.e[0][1], self.e[1][0]),
        )
    }

    pub fn trace(&self) -> u32 {
        self.ctx.add(self.e[0][0], self.e[1][1])
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(&self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.e == [[0, 0], [0, 0]]
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let f = &self.ctx;
        let d = f.inv(self.det())?;
        let [[a, b], [c, e]] = self.e;
        Some(Mat2::new(
            f,
            [
                [f.mul(e, d), f.mul(f.neg(b), d)],
                [f.mul(f.neg(c), d), f.mul(a, d)],
            ],
        ))
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.e;
        Mat2::new(&self.ctx, [[a, c], [b, d]])
    }

    pub fn apply(&self, v: [u32; 2]) -> [u32; 2] {
        let f = &self.ctx;
        [
            f.add(f.mul(self.e[0][0], v[0]), f.mul(self.e[0][1], v[1])),
            f.add(f.mul(self.e[1][0], v[0]), f.mul(self.e[1][1], v[1])),
        ]
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        self.zip(o, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        self.zip(o, |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: u32) -> Mat2 {
        self.zip(self, |f, a, _| f.mul(a, s))
    }

    /// Matrix product `self · o`.
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let f = &self.ctx;
        let mut out = [[0u32; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = f.add(
                    f.mul(self.e[r][0], o.e[0][c]),
                    f.mul(self.e[r][1], o.e[1][c]),
                );
            }
        }
        Mat2::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut acc = Mat2::identity(&self.ctx);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Order in `GL₂(F_q)`; `None` if singular.
    pub fn order(&self) -> Option<u64> {
        if !self.is_invertible() {
            return None;
        }
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            n += 1;
        }
        Some(n)
    }

    /// Rank over `F_q` (0, 1 or 2).
    pub fn rank(&self) -> u32 {
        if self.is_zero() {
            0
        } else if self.is_invertible() {
            2
        } else {
            1
        }
    }

    fn zip(&self, o: &Mat2, op: impl Fn(&FieldCtx, u32, u32) -> u32) -> Mat2 {
        debug_assert_eq!(self.ctx, o.ctx);
        let f = &self.ctx;
        let mut out = [[0u32; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = op(f, self.e[r][c], o.e[r][c]);
            }
        }
        Mat2::new(f, out)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn inverse_of_every_invertible_matrix() {
        let ctx = make_field(5).unwrap();
        let mut invertible = 0;
        for k in 0..625 {
            let m = Mat2::from_index(&ctx, k);
            match m.inverse() {
                Some(inv) => {
                    invertible += 1;
                    assert!(m.mul(&inv).is_identity());
                    assert!(inv.mul(&m).is_identity());
                }
                None => assert_eq!(m.det(), 0),
            }
        }
        // |GL_2(F_5)| = (25 - 1)(25 - 5)
        assert_eq!(invertible, 480);
    }

    #[test]
    fn multiplication_map_matrix() {
        let ctx = make_field(5).unwrap();
        let theta = ctx.theta();
        let m = Mat2::of_ext_map(&ctx, |v| theta * v);
        // θ·1 = θ, θ·θ = 2
        assert_eq!(m.entries(), [[0, 2], [1, 0]]);
        assert_eq!(m.det(), theta.norm());
        assert_eq!(m.trace(), theta.trace());
    }

    #[test]
    fn pow_order_rank() {
        let ctx = make_field(7).unwrap();
        let m = Mat2::diag(&ctx, 2, 4);
        assert_eq!(m.order(), Some(3));
        assert!(m.pow(3).is_identity());
        assert_eq!(Mat2::new(&ctx, [[1, 2], [2, 4]]).rank(), 1);
        assert_eq!(Mat2::zero(&ctx).rank(), 0);
        assert_eq!(Mat2::zero(&ctx).order(), None);
        assert_eq!(
            Mat2::from_index(&ctx, 7 * 7 * 7 + 2).entries(),
            [[1, 0], [0, 2]]
        );
    }
}
