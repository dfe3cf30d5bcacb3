#![allow(dead_code)]

use hopfkit_core::commutative::{alpha_p, group_algebra, GroupTable};
use hopfkit_core::degeneracy::dual_algebra;
use hopfkit_core::fixtures::{abelianres, hopf_catalog};
use hopfkit_core::hopf::dual;
use hopfkit_core::plie::{catalog, reduced_enveloping, LinearFunctional};
use hopfkit_core::twist::twisted_coalgebra;
use hopfkit_core::{AlgebraPresentation, Field, HopfPresentation, Scalar, SparseTensor};

/// An algebra over `F_2` of dimension ≤ 32 with elements as bitmasks.
pub struct BitAlgebra {
    pub dim: usize,
    /// `left[i][j]` is `b_i·b_j`.
    left: Vec<Vec<u32>>,
}

impl BitAlgebra {
    pub fn new(a: &AlgebraPresentation) -> Self {
        assert_eq!(a.field(), Field::Fp(2));
        let d = a.dim();
        assert!(d <= 32);
        let left =
            (0..d).map(|i| (0..d).map(|j| to_mask(&a.mul(&a.basis_vec(i), &a.basis_vec(j)))).collect()).collect();
        BitAlgebra { dim: d, left }
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let mut out = 0;
        for i in bits(x) {
            for j in bits(y) {
                out ^= self.left[i][j];
            }
        }
        out
    }

    /// The two-sided ideal generated by `x`, as an echelon basis.
    pub fn ideal(&self, x: u32) -> Echelon {
        let mut e = Echelon::default();
        let mut queue = vec![x];
        while let Some(v) = queue.pop() {
            if !e.insert(v) {
                continue;
            }
            for i in 0..self.dim {
                queue.push(self.mul(1 << i, v));
                queue.push(self.mul(v, 1 << i));
            }
        }
        e
    }

    /// Whether `I^k = 0` for some `k`.
    pub fn is_nilpotent(&self, ideal: &Echelon) -> bool {
        let mut power = ideal.clone();
        loop {
            if power.rows.is_empty() {
                return true;
            }
            let mut next = Echelon::default();
            for &x in &power.rows {
                for &y in &ideal.rows {
                    next.insert(self.mul(x, y));
                }
            }
            if next.rows.len() == power.rows.len() {
                return false;
            }
            power = next;
        }
    }

    /// The largest nilpotent ideal, by exhaustive search over coset
    /// representatives: every `x` whose ideal is nilpotent lies in it, and
    /// the sum of nilpotent ideals is nilpotent.
    pub fn brute_force_radical(&self) -> Echelon {
        let mut rad = Echelon::default();
        'grow: loop {
            let free: Vec<usize> = (0..self.dim).filter(|&i| !rad.pivots().contains(&i)).collect();
            for code in 1u64..(1u64 << free.len()) {
                let x =
                    free.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).fold(0u32, |acc, (_, &i)| acc | 1 << i);
                let id = self.ideal(x);
                if self.is_nilpotent(&id) {
                    for &v in &id.rows {
                        rad.insert(v);
                    }
                    rad.reduce_fully();
                    continue 'grow;
                }
            }
            return rad;
        }
    }
}

pub fn bits(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| x >> i & 1 == 1)
}

pub fn to_mask(v: &[Scalar]) -> u32 {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Row echelon form over `F_2`, leading bit = lowest set bit.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub rows: Vec<u32>,
}

impl Echelon {
    pub fn reduce(&self, mut x: u32) -> u32 {
        for &r in &self.rows {
            if x >> r.trailing_zeros() & 1 == 1 {
                x ^= r;
            }
        }
        x
    }

    pub fn insert(&mut self, x: u32) -> bool {
        let x = self.reduce(x);
        if x == 0 {
            return false;
        }
        self.rows.push(x);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.trailing_zeros() as usize).collect()
    }

    /// Clears every pivot column from the other rows.
    pub fn reduce_fully(&mut self) {
        for i in 0..self.rows.len() {
            let p = self.rows[i].trailing_zeros();
            for k in 0..self.rows.len() {
                if k != i && self.rows[k] >> p & 1 == 1 {
                    self.rows[k] ^= self.rows[i];
                }
            }
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }
}

/// Whether the library radical spans exactly the brute-force one.
pub fn radical_matches(a: &AlgebraPresentation) -> (usize, usize, bool) {
    let bit = BitAlgebra::new(a);
    let oracle = bit.brute_force_radical();
    let lib: Vec<u32> = hopfkit_core::degeneracy::radical(a).iter().map(|v| to_mask(v)).collect();
    let mut span = Echelon::default();
    for &v in &lib {
        span.insert(v);
    }
    let same = span.rows.len() == lib.len()
        && span.rows.len() == oracle.rows.len()
        && oracle.rows.iter().all(|&v| span.contains(v));
    (oracle.rows.len(), lib.len(), same)
}

fn from_table(
    field: Field,
    basis: Vec<String>,
    unit: Vec<Scalar>,
    f: impl Fn(usize, usize) -> Vec<(usize, i64)>,
) -> AlgebraPresentation {
    AlgebraPresentation::from_fn(field, basis, unit, |i, j| {
        f(i, j).into_iter().map(|(k, c)| (k, field.from_i64(c))).collect()
    })
    .expect("valid table")
}

pub fn matrix_algebra(field: Field, n: usize) -> AlgebraPresentation {
    let basis = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    let mut unit = vec![field.zero(); n * n];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    from_table(field, basis, unit, |a, b| if a % n == b / n { vec![(a / n * n + b % n, 1)] } else { vec![] })
}

pub fn upper_triangular(field: Field, n: usize) -> AlgebraPresentation {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let basis = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let unit = pairs.iter().map(|(i, j)| if i == j { field.one() } else { field.zero() }).collect();
    from_table(field, basis, unit, |a, b| {
        let ((i, j), (k, l)) = (pairs[a], pairs[b]);
        if j == k {
            vec![(pairs.iter().position(|&q| q == (i, l)).unwrap(), 1)]
        } else {
            vec![]
        }
    })
}

pub fn truncated_polynomials(field: Field, n: usize) -> AlgebraPresentation {
    let basis = (0..n).map(|i| format!("t^{i}")).collect();
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    from_table(field, basis, unit, |i, j| if i + j < n { vec![(i + j, 1)] } else { vec![] })
}

/// Algebras over `F_2` of dimension ≤ 16: catalog Hopf algebras and their
/// duals, group algebras of small groups, matrix and triangular algebras,
/// truncated polynomials, reduced enveloping algebras and twisted duals.
pub fn f2_corpus() -> Vec<(String, AlgebraPresentation)> {
    let f = Field::Fp(2);
    let mut out: Vec<(String, AlgebraPresentation)> = Vec::new();
    let push_hopf = |name: String, h: &HopfPresentation, out: &mut Vec<(String, AlgebraPresentation)>| {
        if h.dim() <= 16 {
            out.push((name.clone(), h.algebra().clone()));
            out.push((format!("dual of {name}"), dual(h).algebra().clone()));
        }
    };
    for (name, h) in hopf_catalog().unwrap() {
        if h.field() == f {
            push_hopf(name, &h, &mut out);
        }
    }
    let z2 = GroupTable::cyclic(2);
    let z2_4 = GroupTable::direct_product(&GroupTable::klein4(), &GroupTable::klein4());
    for g in [
        GroupTable::klein4(),
        GroupTable::dihedral(4),
        GroupTable::quaternion(),
        GroupTable::symmetric(3),
        GroupTable::cyclic(8),
        z2_4,
    ] {
        let name = format!("k[{}]", g.name().unwrap_or("G"));
        push_hopf(name, &group_algebra(&g, f), &mut out);
    }
    push_hopf(
        "k[Z/2 x Z/4]".into(),
        &group_algebra(&GroupTable::direct_product(&z2, &GroupTable::cyclic(4)), f),
        &mut out,
    );
    push_hopf("alpha_2".into(), &alpha_p(f).unwrap(), &mut out);
    for n in 1..=4 {
        out.push((format!("M_{n}"), matrix_algebra(f, n)));
    }
    for n in 2..=4 {
        out.push((format!("T_{n}"), upper_triangular(f, n)));
    }
    for n in [2, 5, 8, 16] {
        out.push((format!("F_2[t]/(t^{n})"), truncated_polynomials(f, n)));
    }
    let g = catalog("nonabelian2", 2).unwrap();
    for xi in [[0, 0], [1, 0], [0, 1], [1, 1]] {
        let xi = LinearFunctional(xi.iter().map(|&c| f.from_i64(c)).collect());
        out.push((format!("u_xi(nonabelian2), xi = {:?}", xi.0), reduced_enveloping(&g, &xi).unwrap()));
    }
    let ex = abelianres(2).unwrap();
    out.push(("twisted dual of u(abelian2)".into(), dual_algebra(&twisted_coalgebra(&ex.parent, &ex.twist).unwrap())));
    out.push(("untwisted dual of u(abelian2)".into(), dual_algebra(ex.parent.coalgebra())));
    out
}

type Dense3 = Vec<Scalar>;

/// Naive dense arithmetic in `H^{⊗3}` straight from the structure tables.
pub struct Naive<'a> {
    h: &'a HopfPresentation,
    d: usize,
}

impl<'a> Naive<'a> {
    pub fn new(h: &'a HopfPresentation) -> Self {
        Naive { h, d: h.dim() }
    }

    fn zero(&self) -> Dense3 {
        vec![self.h.field().zero(); self.d.pow(3)]
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.d + b) * self.d + c
    }

    fn mul1(&self, i: usize, k: usize) -> Vec<(usize, Scalar)> {
        let a = self.h.algebra();
        a.mul(&a.basis_vec(i), &a.basis_vec(k)).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn mul(&self, x: &Dense3, y: &Dense3) -> Dense3 {
        let d = self.d;
        let nz = |v: &Dense3| -> Vec<(usize, usize, usize, Scalar)> {
            (0..v.len()).filter(|&i| !v[i].is_zero()).map(|i| (i / (d * d), i / d % d, i % d, v[i])).collect()
        };
        let mut out = self.zero();
        for (a, b, c, u) in nz(x) {
            for (a2, b2, c2, v) in nz(y) {
                for (p, s) in self.mul1(a, a2) {
                    for (q, t) in self.mul1(b, b2) {
                        for (r, w) in self.mul1(c, c2) {
                            let i = self.idx(p, q, r);
                            out[i] += u * v * s * t * w;
                        }
                    }
                }
            }
        }
        out
    }

    /// `J` placed in slots `(0,1)` or `(1,2)`, unit elsewhere.
    pub fn embed(&self, j: &SparseTensor, first: bool) -> Dense3 {
        let unit = self.h.algebra().unit();
        let mut out = self.zero();
        for (idx, c) in j.iter() {
            for (u, &e) in unit.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let i = if first { self.idx(idx[0], idx[1], u) } else { self.idx(u, idx[0], idx[1]) };
                out[i] += c * e;
            }
        }
        out
    }

    /// `(Δ⊗id)(J)` or `(id⊗Δ)(J)`.
    pub fn coproduct(&self, j: &SparseTensor, first: bool) -> Dense3 {
        let c = self.h.coalgebra();
        let mut out = self.zero();
        for (idx, v) in j.iter() {
            let split = if first { idx[0] } else { idx[1] };
            for (pair, w) in c.coproduct(split).iter() {
                let i = if first { self.idx(pair[0], pair[1], idx[1]) } else { self.idx(idx[0], pair[0], pair[1]) };
                out[i] += v * w;
            }
        }
        out
    }

    /// Both sides of `(J⊗1)(Δ⊗id)(J) = (1⊗J)(id⊗Δ)(J)`.
    pub fn adopted_sides(&self, j: &SparseTensor) -> (Dense3, Dense3) {
        (
            self.mul(&self.embed(j, true), &self.coproduct(j, true)),
            self.mul(&self.embed(j, false), &self.coproduct(j, false)),
        )
    }

    /// Both sides of `(Δ⊗id)(J)(J⊗1) = (id⊗Δ)(J)(1⊗J)`.
    pub fn printed_sides(&self, j: &SparseTensor) -> (Dense3, Dense3) {
        (
            self.mul(&self.coproduct(j, true), &self.embed(j, true)),
            self.mul(&self.coproduct(j, false), &self.embed(j, false)),
        )
    }
}
