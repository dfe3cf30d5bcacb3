use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableJson {
    pub order: usize,
    pub table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Input(format!("a group table of order {order} needs {} entries", order * order)));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::Input(format!("table entry {bad} out of range")));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::Input("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Input(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { order, table, identity, inverse, name: None })
    }

    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..order * order).map(|k| mul(k / order, k % order)).collect();
        Self::new(order, table)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group").named(format!("Z/{n}"))
    }

    pub fn klein4() -> Self {
        Self::from_fn(4, |a, b| a ^ b).expect("Klein four").named("Z/2xZ/2")
    }

    /// The dihedral group of order `2n`; `r^k s^e` has index `k + n·e`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, |x, y| {
            let (a, e) = (x % n, x / n);
            let (b, f) = (y % n, y / n);
            let k = (if e == 0 { a + b } else { a + n - b }) % n;
            k + n * ((e + f) % 2)
        })
        .expect("dihedral group")
        .named(format!("D{n}"))
    }

    pub fn quaternion() -> Self {
        // i^k j^e with j^2 = i^2, j i = i^3 j.
        Self::from_fn(8, |x, y| {
            let (a, e) = (x % 4, x / 4);
            let (b, f) = (y % 4, y / 4);
            let b = if e == 1 { (4 - b) % 4 } else { b };
            let extra = if e == 1 && f == 1 { 2 } else { 0 };
            (a + b + extra) % 4 + 4 * ((e + f) % 2)
        })
        .expect("quaternion group")
        .named("Q8")
    }

    /// The symmetric group on `n` letters, elements in lexicographic order.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        Self::from_fn(perms.len(), |a, b| {
            let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index(&c)
        })
        .expect("symmetric group")
        .named(format!("S{n}"))
    }

    /// `(a, b)` has index `a·|h| + b`.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let m = h.order;
        let t =
            Self::from_fn(g.order * m, |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).expect("product group");
        match (&g.name, &h.name) {
            (Some(a), Some(b)) => t.named(format!("{a}x{b}")),
            _ => t,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, |acc, k| acc.lcm(&k))
    }

    /// Sorted element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn to_json(&self) -> GroupTableJson {
        GroupTableJson { order: self.order, table: self.table.clone(), name: self.name.clone() }
    }

    pub fn from_json(j: &GroupTableJson) -> Result<Self> {
        let t = Self::new(j.order, j.table.clone())?;
        Ok(match &j.name {
            Some(n) => t.named(n.clone()),
            None => t,
        })
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// An isomorphism `g → h` as an image table, found by backtracking over
/// images of a generating set with element-order pruning.
pub fn find_isomorphism(g: &GroupTable, h: &GroupTable) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    let gens = generators(g);
    let mut images = vec![0usize; gens.len()];
    search(g, h, &gens, &mut images, 0)
}

pub(crate) fn generators(g: &GroupTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    // Prefer elements of large order so fewer generators are needed.
    let mut candidates: Vec<usize> = (0..g.order()).collect();
    candidates.sort_by_key(|&a| std::cmp::Reverse(g.element_order(a)));
    for a in candidates {
        if inside[a] {
            continue;
        }
        gens.push(a);
        span = closure(g, &gens);
        inside = vec![false; g.order()];
        for &x in &span {
            inside[x] = true;
        }
        if span.len() == g.order() {
            break;
        }
    }
    gens
}

fn closure(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut out = vec![g.identity()];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn search(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &mut Vec<usize>, k: usize) -> Option<Vec<usize>> {
    if k == gens.len() {
        return extend(g, h, gens, images);
    }
    let want = g.element_order(gens[k]);
    for cand in 0..h.order() {
        if h.element_order(cand) != want {
            continue;
        }
        images[k] = cand;
        if let Some(f) = search(g, h, gens, images, k + 1) {
            return Some(f);
        }
    }
    None
}

/// Extends generator images to a map by breadth-first words and checks it
/// is a bijective homomorphism.
fn extend(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut f = vec![usize::MAX; n];
    f[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, *s);
            let fy = h.mul(f[x], t);
            if f[y] == usize::MAX {
                f[y] = fy;
                queue.push(y);
            } else if f[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    let mut hit = vec![false; n];
    for &y in &f {
        if y == usize::MAX || hit[y] {
            return None;
        }
        hit[y] = true;
    }
    let hom = (0..n).all(|a| (0..n).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])));
    hom.then_some(f)
}

/// The five groups of order 8, by name.
pub fn order8_groups() -> Vec<GroupTable> {
    let z2 = GroupTable::cyclic(2);
    let z4 = GroupTable::cyclic(4);
    vec![
        GroupTable::cyclic(8),
        GroupTable::direct_product(&z4, &z2),
        GroupTable::direct_product(&GroupTable::direct_product(&z2, &z2), &z2),
        GroupTable::dihedral(4),
        GroupTable::quaternion(),
    ]
}

/// The name of the order-8 group isomorphic to `g`.
pub fn identify_order8(g: &GroupTable) -> Option<String> {
    order8_groups().into_iter().find(|c| find_isomorphism(g, c).is_some()).and_then(|c| c.name().map(str::to_string))
}
