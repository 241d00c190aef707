//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest group accepted by [`drinfeld_double_rank`] and [`FiniteGroup::parse`].
pub const DOUBLE_RANK_BOUND: usize = 200;

/// A finite group on `{0, …, n−1}` with `table[a * n + b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<FiniteGroup> {
        if n == 0 || table.len() != n * n {
            return Err(Error::BadParameter(format!(
                "table must have {n}×{n} entries"
            )));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::BadParameter("entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::BadParameter("no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::BadParameter(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::BadParameter(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            n,
            table,
            identity,
            inverse,
        })
    }

    /// Builds the table from a product known to be a group law.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let table: Vec<u32> = (0..n * n).map(|k| mul(k / n, k % n) as u32).collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a))
            .expect("group law has an identity");
        let mut inverse = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] as usize == identity {
                    inverse[a] = b;
                }
            }
        }
        FiniteGroup {
            n,
            table,
            identity,
            inverse,
        }
    }

    /// Text form: first line `n`, then `n` lines of `n` indices.
    pub fn parse(s: &str) -> Result<FiniteGroup> {
        let mut tokens = s.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty group file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first token must be the group order".into()))?;
        if n > DOUBLE_RANK_BOUND {
            return Err(Error::BoundExceeded {
                what: "group order",
                value: n as u64,
                bound: DOUBLE_RANK_BOUND as u64,
            });
        }
        let table = tokens
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if table.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        FiniteGroup::from_table(n, table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.table.chunks(self.n) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n)
    }

    /// `S_k` on permutations listed lexicographically; `(σ·τ)(x) = σ(τ(x))`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
        // lexicographic next-permutation
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
            perms.push(p);
        }
        let index = |p: &[usize]| perms.iter().position(|x| x == p).unwrap();
        FiniteGroup::from_fn(perms.len(), |a, b| {
            let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        })
    }

    /// `Z/m ⋊ Z/k` with the generator of `Z/k` acting by `x ↦ r·x`;
    /// element `(x, i)` has index `i·m + x`.
    pub fn metacyclic(m: usize, k: usize, r: usize) -> Result<FiniteGroup> {
        let rk = (0..k).fold(1usize, |acc, _| acc * r % m);
        if m == 0 || k == 0 || rk != 1 % m {
            return Err(Error::BadParameter(format!("{r}^{k} ≢ 1 mod {m}")));
        }
        let rpow: Vec<usize> = (0..k)
            .scan(1usize, |acc, _| {
                let cur = *acc;
                *acc = *acc * r % m;
                Some(cur)
            })
            .collect();
        Ok(FiniteGroup::from_fn(m * k, |a, b| {
            let (x, i) = (a % m, a / m);
            let (y, j) = (b % m, b / m);
            ((i + j) % k) * m + (x + rpow[i] * y) % m
        }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.commute(a, b)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.classes_within(&(0..self.n).collect::<Vec<_>>())
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Elements commuting with `g`, ascending.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.commute(g, x)).collect()
    }

    /// Conjugacy classes of the subgroup `h` (sorted element list) under its
    /// own conjugation action.
    pub fn classes_within(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for &x in h {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = h.iter().map(|&g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Closure of `gens` under multiplication, ascending.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut frontier = vec![self.identity];
        let mut gens: Vec<usize> = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.generated_by(&comms)
    }

    /// `|G / [G, G]|`, the number of one-dimensional characters.
    pub fn abelianization_order(&self) -> usize {
        self.n / self.derived_subgroup().len()
    }
}

/// Rank of the untwisted double `Z(Vec_G)`: `Σ_{[g]} #classes(C(g))`.
pub fn drinfeld_double_rank(group: &FiniteGroup) -> Result<u64> {
    drinfeld_double_rank_with(group, Exec::default())
}

pub fn drinfeld_double_rank_with(group: &FiniteGroup, exec: Exec) -> Result<u64> {
    if group.order() > DOUBLE_RANK_BOUND {
        return Err(Error::BoundExceeded {
            what: "group order",
            value: group.order() as u64,
            bound: DOUBLE_RANK_BOUND as u64,
        });
    }
    let reps: Vec<usize> = group.conjugacy_classes().iter().map(|c| c[0]).collect();
    Ok(exec.sum(reps.len(), |i| {
        group.classes_within(&group.centralizer(reps[i])).len() as u64
    }))
}
