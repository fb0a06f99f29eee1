//! Finite groups as explicit multiplication tables, with constructors for
//! the small catalog used by the verification scenarios.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub n: usize,
    /// `mul[i * n + j]` is the index of the product of elements i and j.
    pub mul: Vec<usize>,
    pub inv: Vec<usize>,
    pub id: usize,
    pub gens: Vec<usize>,
}

impl Hash for GroupTable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.mul.hash(state);
        self.gens.hash(state);
    }
}

impl GroupTable {
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut ord = 1;
        while x != self.id {
            x = self.mul(x, g);
            ord += 1;
        }
        ord
    }

    pub fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|g| self.element_order(g)).collect();
        v.sort_unstable();
        v
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.mul.len() != n * n || self.inv.len() != n {
            return Err(Error::BadGroup("table shape".into()));
        }
        for i in 0..n {
            if self.mul(self.id, i) != i || self.mul(i, self.id) != i {
                return Err(Error::BadGroup("identity axiom fails".into()));
            }
            if self.mul(i, self.inv[i]) != self.id || self.mul(self.inv[i], i) != self.id {
                return Err(Error::BadGroup("inverse axiom fails".into()));
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::BadGroup("associativity fails".into()));
                        }
                    }
                }
            }
        }
        // generators generate
        let closure = self.closure_of(&self.gens);
        if closure.len() != n {
            return Err(Error::BadGroup("generators do not generate".into()));
        }
        Ok(())
    }

    /// Indices of the subgroup generated by `seed` (always contains the
    /// identity), in BFS order.
    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.id] = true;
        let mut out = vec![self.id];
        let mut frontier = vec![self.id];
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgroup generated by `seed` as a group table of its own, plus
    /// the embedding of subgroup indices into `self`.
    pub fn subgroup(&self, seed: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        let elems = self.closure_of(seed);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = elems.len();
        let mut mul = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = pos[&self.mul(elems[i], elems[j])];
            }
        }
        let inv = (0..k).map(|i| pos[&self.inv[elems[i]]]).collect();
        let gens: Vec<usize> = seed.iter().map(|g| pos[g]).collect();
        let g = GroupTable {
            n: k,
            mul,
            inv,
            id: pos[&self.id],
            gens: if gens.is_empty() { vec![pos[&self.id]] } else { gens },
        };
        g.validate()?;
        Ok((g, elems))
    }

    /// Generators of a Sylow p-subgroup; for the abelian catalog the
    /// elements of p-power order generate it.
    pub fn sylow_gens(&self, p: u64) -> Vec<usize> {
        (0..self.n)
            .filter(|&g| {
                let o = self.element_order(g);
                g != self.id && is_power_of(o, p)
            })
            .collect()
    }
}

fn is_power_of(mut n: usize, p: u64) -> bool {
    while n % p as usize == 0 {
        n /= p as usize;
    }
    n == 1
}

pub fn group_cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::BadGroup("order must be positive".into()));
    }
    let mul = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
    let inv = (0..n).map(|i| (n - i) % n).collect();
    let g = GroupTable {
        n,
        mul,
        inv,
        id: 0,
        gens: if n == 1 { vec![0] } else { vec![1] },
    };
    g.validate()?;
    Ok(g)
}

pub fn group_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let n = a.n * b.n;
    let ix = |i: usize, j: usize| i * b.n + j;
    let mut mul = vec![0usize; n * n];
    for i1 in 0..a.n {
        for j1 in 0..b.n {
            for i2 in 0..a.n {
                for j2 in 0..b.n {
                    mul[ix(i1, j1) * n + ix(i2, j2)] = ix(a.mul(i1, i2), b.mul(j1, j2));
                }
            }
        }
    }
    let inv = (0..n).map(|x| ix(a.inv[x / b.n], b.inv[x % b.n])).collect();
    let mut gens: Vec<usize> = a.gens.iter().map(|&g| ix(g, b.id)).collect();
    gens.extend(b.gens.iter().map(|&g| ix(a.id, g)));
    gens.retain(|&g| g != ix(a.id, b.id));
    if gens.is_empty() {
        gens.push(ix(a.id, b.id));
    }
    let g = GroupTable { n, mul, inv, id: ix(a.id, b.id), gens };
    g.validate()?;
    Ok(g)
}

/// Closure of a set of permutations (given in one-line notation on
/// `0..degree`) under composition.
pub fn group_from_perms(perms: &[Vec<usize>], bound: usize) -> Result<GroupTable> {
    let degree = perms.first().map_or(1, |p| p.len());
    for p in perms {
        if p.len() != degree {
            return Err(Error::BadGroup("permutations act on different sets".into()));
        }
        let mut seen = vec![false; degree];
        for &i in p {
            if i >= degree || seen[i] {
                return Err(Error::BadGroup("not a permutation".into()));
            }
            seen[i] = true;
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> {
        // (a then b): x -> b[a[x]]
        a.iter().map(|&x| b[x]).collect()
    };
    let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
    let mut pos: HashMap<Vec<usize>, usize> = HashMap::new();
    pos.insert(identity.clone(), 0);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for p in perms {
            let q = compose(&elems[i], p);
            if !pos.contains_key(&q) {
                if elems.len() >= bound {
                    return Err(Error::ClosureBound(bound));
                }
                pos.insert(q.clone(), elems.len());
                frontier.push(elems.len());
                elems.push(q);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = pos[&compose(&elems[i], &elems[j])];
        }
    }
    let mut inv = vec![0usize; n];
    for i in 0..n {
        let mut p = vec![0usize; degree];
        for (x, &y) in elems[i].iter().enumerate() {
            p[y] = x;
        }
        inv[i] = pos[&p];
    }
    let gens: Vec<usize> = perms.iter().filter_map(|p| pos.get(p).copied()).filter(|&g| g != 0).collect();
    let g = GroupTable {
        n,
        mul,
        inv,
        id: 0,
        gens: if gens.is_empty() { vec![0] } else { gens },
    };
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        for n in [1, 2, 3, 4, 8] {
            let g = group_cyclic(n).unwrap();
            assert_eq!(g.n, n);
            assert_eq!(g.gens.len(), 1);
        }
    }

    #[test]
    fn products() {
        let c2 = group_cyclic(2).unwrap();
        let c3 = group_cyclic(3).unwrap();
        let v4 = group_product(&c2, &c2).unwrap();
        assert_eq!(v4.n, 4);
        assert_eq!(v4.gens.len(), 2);
        assert_eq!(v4.order_multiset(), vec![1, 2, 2, 2]);
        // C1 x G = G up to relabeling
        let c1 = group_cyclic(1).unwrap();
        let g = group_product(&c1, &c3).unwrap();
        assert_eq!(g.order_multiset(), c3.order_multiset());
        // C2 x C3 = C6 via element orders
        let c6 = group_product(&c2, &c3).unwrap();
        assert_eq!(c6.order_multiset(), group_cyclic(6).unwrap().order_multiset());
    }

    #[test]
    fn perm_groups() {
        // S3 from a transposition and a 3-cycle
        let s3 = group_from_perms(&[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(s3.n, 6);
        let triv = group_from_perms(&[], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(triv.n, 1);
        let c5 = group_from_perms(&[vec![1, 2, 3, 4, 0]], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(c5.n, 5);
        assert!(group_from_perms(&[vec![1, 2, 3, 4, 0]], 3).is_err());
    }

    #[test]
    fn subgroup_closure() {
        let c6 = group_cyclic(6).unwrap();
        let (h, embed) = c6.subgroup(&[2]).unwrap();
        assert_eq!(h.n, 3);
        assert_eq!(embed, vec![0, 2, 4]);
        let c12 = group_product(&group_cyclic(4).unwrap(), &group_cyclic(3).unwrap()).unwrap();
        assert_eq!(c12.subgroup(&c12.sylow_gens(2)).unwrap().0.n, 4);
        assert_eq!(c12.subgroup(&c12.sylow_gens(3)).unwrap().0.n, 3);
    }
}
