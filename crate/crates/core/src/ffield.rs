//! Prime fields `F_q` and their quadratic extensions `F_{q^2}`.
//!
//! Base-field scalars are plain `u32` residues in `0..q`; the arithmetic on
//! them lives on [`FieldCtx`]. Extension elements are [`ExtElement`], which
//! carries its (copyable) context so the usual operators work directly.
//!
//! The extension is modelled as `F_q[θ]/(θ² + c₁θ + c₀)` with a canonical
//! defining polynomial: `x² − d` for the least quadratic non-residue `d` when
//! `q` is odd, and `x² + x + 1` when `q = 2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest characteristic accepted by [`make_field`].
pub const DEFAULT_BOUND: u64 = 10_000;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `F_q` together with the defining relation `θ² + c₁θ + c₀ = 0` of `F_{q^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    q: u32,
    c1: u32,
    c0: u32,
}

/// Builds the canonical `F_{q^2}` for a prime `q ≤ DEFAULT_BOUND`.
pub fn make_field(q: u64) -> Result<FieldCtx> {
    make_field_bounded(q, DEFAULT_BOUND)
}

pub fn make_field_bounded(q: u64, bound: u64) -> Result<FieldCtx> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q > bound {
        return Err(Error::BoundExceeded {
            what: "q",
            value: q,
            bound,
        });
    }
    let q32 = q as u32;
    let ctx = if q == 2 {
        FieldCtx { q: 2, c1: 1, c0: 1 }
    } else {
        let d = least_nonresidue(q32);
        FieldCtx {
            q: q32,
            c1: 0,
            c0: q32 - d,
        }
    };
    debug_assert!(
        (0..q32).all(|x| ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(ctx.c1, x)), ctx.c0) != 0),
        "defining polynomial has a root in F_q"
    );
    Ok(ctx)
}

fn least_nonresidue(q: u32) -> u32 {
    let probe = FieldCtx { q, c1: 0, c0: 0 };
    (2..q)
        .find(|&d| probe.pow(d, u64::from(q - 1) / 2) == q - 1)
        .expect("every odd prime field has a non-residue")
}

impl FieldCtx {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients `[c₀, c₁, 1]` of the defining polynomial, low degree first.
    pub fn defining_poly(&self) -> [u32; 3] {
        [self.c0, self.c1, 1]
    }

    /// `true` iff the defining polynomial has no root in `F_q`.
    pub fn defining_poly_is_irreducible(&self) -> bool {
        (0..self.q).all(|x| self.add(self.add(self.mul(x, x), self.mul(self.c1, x)), self.c0) != 0)
    }

    /// Human-readable defining polynomial, e.g. `x^2 - 2` or `x^2 + x + 1`.
    pub fn defining_poly_string(&self) -> String {
        if self.c1 == 0 {
            return format!("x^2 - {}", self.neg(self.c0));
        }
        let lin = if self.c1 == 1 {
            "x".to_string()
        } else {
            format!("{}x", self.c1)
        };
        format!("x^2 + {} + {}", lin, self.c0)
    }

    pub fn is_odd(&self) -> bool {
        self.q != 2
    }

    // -- F_q arithmetic on residues --------------------------------------

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.q)) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as u32
    }

    pub fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse in `F_q`, `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, u64::from(self.q) - 2))
    }

    /// `a / 2`; panics in characteristic 2.
    pub fn half(&self, a: u32) -> u32 {
        assert!(self.is_odd(), "halving in characteristic 2");
        self.mul(a, self.q.div_ceil(2))
    }

    // -- F_{q^2} constructors ---------------------------------------------

    pub fn elem(&self, a0: u32, a1: u32) -> ExtElement {
        ExtElement {
            a0: a0 % self.q,
            a1: a1 % self.q,
            ctx: *self,
        }
    }

    pub fn from_base(&self, a: u32) -> ExtElement {
        self.elem(a, 0)
    }

    pub fn zero(&self) -> ExtElement {
        self.elem(0, 0)
    }

    pub fn one(&self) -> ExtElement {
        self.elem(1, 0)
    }

    /// The adjoined root `θ`.
    pub fn theta(&self) -> ExtElement {
        self.elem(0, 1)
    }

    /// Number of elements of `F_{q^2}`.
    pub fn order(&self) -> usize {
        (self.q as usize) * (self.q as usize)
    }

    /// The `k`-th element in `(a0, a1)` lexicographic order.
    pub fn element_at(&self, k: usize) -> ExtElement {
        let q = self.q as usize;
        self.elem((k / q) as u32, (k % q) as u32)
    }

    /// All `q²` elements in `(a0, a1)` lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.order()).map(move |k| self.element_at(k))
    }
}

/// An element `a0 + a1·θ` of `F_{q^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    a0: u32,
    a1: u32,
    ctx: FieldCtx,
}

impl ExtElement {
    pub fn a0(&self) -> u32 {
        self.a0
    }

    pub fn a1(&self) -> u32 {
        self.a1
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Coordinates in the basis `{1, θ}`.
    pub fn coords(&self) -> [u32; 2] {
        [self.a0, self.a1]
    }

    /// Position in [`FieldCtx::elements`].
    pub fn index(&self) -> usize {
        self.a0 as usize * self.ctx.q as usize + self.a1 as usize
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.a0 == 1 % self.ctx.q && self.a1 == 0
    }

    /// Membership in the prime subfield by coordinates.
    pub fn is_base(&self) -> bool {
        self.a1 == 0
    }

    /// `x ↦ x^q`, computed from the conjugate root `−c₁ − θ`.
    pub fn frobenius(&self) -> ExtElement {
        let f = &self.ctx;
        ExtElement {
            a0: f.sub(self.a0, f.mul(self.a1, f.c1)),
            a1: f.neg(self.a1),
            ctx: self.ctx,
        }
    }

    /// `x·x^q ∈ F_q`.
    pub fn norm(&self) -> u32 {
        let n = *self * self.frobenius();
        debug_assert_eq!(n.a1, 0);
        n.a0
    }

    /// `x + x^q ∈ F_q`.
    pub fn trace(&self) -> u32 {
        let t = *self + self.frobenius();
        debug_assert_eq!(t.a1, 0);
        t.a0
    }

    pub fn pow(&self, mut e: u64) -> ExtElement {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `x⁻¹ = σ(x)/N(x)`, `None` for zero.
    pub fn inv(&self) -> Option<ExtElement> {
        let n_inv = self.ctx.inv(self.norm())?;
        let s = self.frobenius();
        Some(
            self.ctx
                .elem(self.ctx.mul(s.a0, n_inv), self.ctx.mul(s.a1, n_inv)),
        )
    }

    /// Order in `F_{q^2}^×`, `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = u64::from(self.ctx.q) * u64::from(self.ctx.q) - 1;
        let mut order = group;
        for f in prime_factors(group) {
            while order % f == 0 && self.pow(order / f).is_one() {
                order /= f;
            }
        }
        Some(order)
    }

    /// Euler's criterion in `F_{q^2}^×`; zero counts as a square.
    pub fn is_square(&self) -> bool {
        let group = u64::from(self.ctx.q) * u64::from(self.ctx.q) - 1;
        self.is_zero() || group % 2 == 1 || self.pow(group / 2).is_one()
    }

    /// A square root in `F_{q^2}`, choosing the smaller of `±y` in
    /// `(a0, a1)` order. `None` when `x` is not a square.
    pub fn sqrt(&self) -> Option<ExtElement> {
        if self.is_zero() {
            return Some(*self);
        }
        if !self.is_square() {
            return None;
        }
        let ctx = self.ctx;
        let group = u64::from(ctx.q) * u64::from(ctx.q) - 1;
        let s = group.trailing_zeros();
        let t = group >> s;
        let mut root = self.pow(t.div_ceil(2));
        if s > 0 {
            // Tonelli-Shanks in the cyclic group F_{q^2}^×.
            let z = ctx
                .elements()
                .skip(1)
                .find(|z| !z.is_square())
                .expect("odd-characteristic field has non-squares");
            let mut m = s;
            let mut c = z.pow(t);
            let mut tt = self.pow(t);
            while !tt.is_one() {
                let mut i = 0;
                let mut probe = tt;
                while !probe.is_one() {
                    probe = probe * probe;
                    i += 1;
                }
                let mut b = c;
                for _ in 0..(m - i - 1) {
                    b = b * b;
                }
                m = i;
                c = b * b;
                tt = tt * c;
                root = root * b;
            }
        }
        debug_assert_eq!(root * root, *self);
        Some(root.min(-root))
    }
}

impl PartialOrd for ExtElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a0, self.a1)
            .cmp(&(other.a0, other.a1))
            .then_with(|| self.ctx.cmp(&other.ctx))
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a0, self.a1) {
            (a0, 0) => write!(f, "{a0}"),
            (0, 1) => write!(f, "θ"),
            (0, a1) => write!(f, "{a1}θ"),
            (a0, 1) => write!(f, "{a0}+θ"),
            (a0, a1) => write!(f, "{a0}+{a1}θ"),
        }
    }
}

impl Add for ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: ExtElement) -> ExtElement {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let f = self.ctx;
        ExtElement {
            a0: f.add(self.a0, rhs.a0),
            a1: f.add(self.a1, rhs.a1),
            ctx: f,
        }
    }
}

impl Sub for ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: ExtElement) -> ExtElement {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let f = self.ctx;
        ExtElement {
            a0: f.sub(self.a0, rhs.a0),
            a1: f.sub(self.a1, rhs.a1),
            ctx: f,
        }
    }
}

impl Neg for ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        let f = self.ctx;
        ExtElement {
            a0: f.neg(self.a0),
            a1: f.neg(self.a1),
            ctx: f,
        }
    }
}

impl Mul for ExtElement {
    type Output = ExtElement;
    fn mul(self, rhs: ExtElement) -> ExtElement {
        debug_assert_eq!(self.ctx, rhs.ctx);
        let f = self.ctx;
        // θ² = −c₁θ − c₀
        let hi = f.mul(self.a1, rhs.a1);
        let a0 = f.sub(f.mul(self.a0, rhs.a0), f.mul(f.c0, hi));
        let a1 = f.sub(
            f.add(f.mul(self.a0, rhs.a1), f.mul(self.a1, rhs.a0)),
            f.mul(f.c1, hi),
        );
        ExtElement { a0, a1, ctx: f }
    }
}

impl Div for ExtElement {
    type Output = ExtElement;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ExtElement) -> ExtElement {
        self * rhs.inv().expect("division by zero in F_{q^2}")
    }
}

/// All `x` with `N(x) = 1`, sorted by `(a0, a1)`.
pub fn ker_norm(ctx: &FieldCtx) -> Vec<ExtElement> {
    ker_norm_with(ctx, Exec::default())
}

pub fn ker_norm_with(ctx: &FieldCtx, exec: Exec) -> Vec<ExtElement> {
    let q = ctx.q;
    exec.flat_map(q as usize, |a0| {
        (0..q)
            .map(|a1| ctx.elem(a0 as u32, a1))
            .filter(|x| x.norm() == 1 % q)
            .collect()
    })
}

/// Smallest element of [`ker_norm`] of order `q + 1`; its existence makes the
/// norm-one subgroup cyclic.
pub fn ker_norm_generator(ctx: &FieldCtx) -> Option<ExtElement> {
    let target = u64::from(ctx.q) + 1;
    ker_norm(ctx)
        .into_iter()
        .find(|x| x.multiplicative_order() == Some(target))
}

/// Lexicographically smallest `c ≠ 1` with `N(c) = 1` and `c^p = 1`.
pub fn pick_order_p(ctx: &FieldCtx, p: u64) -> Result<ExtElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = u64::from(ctx.q);
    if (q + 1) % p != 0 {
        return Err(Error::NoSuchElement { p, q });
    }
    ker_norm(ctx)
        .into_iter()
        .find(|c| !c.is_one() && c.pow(p).is_one())
        .ok_or(Error::NoSuchElement { p, q })
}
