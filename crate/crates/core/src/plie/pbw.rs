use std::collections::HashMap;

use super::{LinearFunctional, PLiePresentation};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraPresentation, CoalgebraPresentation, HopfPresentation};
use crate::linalg::{Field, Matrix, Scalar, SparseRow, SparseTensor};

const MAX_DEPTH: usize = 4096;

/// PBW monomials `x_1^{a_1} ... x_n^{a_n}` are indexed by `Σ a_i p^i`.
pub fn pbw_index(exponents: &[u32], p: u32) -> usize {
    exponents.iter().rev().fold(0, |acc, &a| acc * p as usize + a as usize)
}

pub fn pbw_exponents(mut m: usize, n: usize, p: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let a = (m % p as usize) as u32;
            m /= p as usize;
            a
        })
        .collect()
}

/// Label such as `h^1 x^2`; the empty monomial is `1`.
pub fn pbw_label(names: &[String], m: usize, p: u32) -> String {
    let exps = pbw_exponents(m, names.len(), p);
    let parts: Vec<String> =
        exps.iter().zip(names).filter(|(a, _)| **a > 0).map(|(a, name)| format!("{name}^{a}")).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

#[derive(Default)]
struct Acc(HashMap<usize, Scalar>);

impl Acc {
    fn add(&mut self, m: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert(c.field().zero());
        *e += c;
    }

    fn add_row(&mut self, row: &SparseRow, c: Scalar) {
        for &(m, v) in row {
            self.add(m, c * v);
        }
    }

    fn finish(self) -> SparseRow {
        let mut row: SparseRow = self.0.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_unstable_by_key(|e| e.0);
        row
    }
}

/// Straightening of PBW monomials. Left multiplication by each generator is
/// memoized per monomial.
pub(crate) struct Straightener {
    field: Field,
    p: u32,
    n: usize,
    brackets: Vec<SparseRow>,
    pmap: Vec<SparseRow>,
    xi_p: Vec<Scalar>,
    memo: HashMap<(usize, usize), SparseRow>,
    active: Vec<(usize, usize)>,
}

impl Straightener {
    pub(crate) fn new(l: &PLiePresentation, xi: Option<&LinearFunctional>) -> Self {
        let n = l.dim();
        let field = l.field();
        let brackets = (0..n * n).map(|ij| crate::hopf::dense_to_row(&l.bracket_of(ij / n, ij % n))).collect();
        let pmap = l.pmap().iter().map(|v| crate::hopf::dense_to_row(v)).collect();
        let xi_p = match xi {
            Some(xi) => xi.0.iter().map(|c| c.pow(l.p() as u64)).collect(),
            None => vec![field.zero(); n],
        };
        Straightener { field, p: l.p(), n, brackets, pmap, xi_p, memo: HashMap::new(), active: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    fn power(&self, v: usize) -> usize {
        (self.p as usize).pow(v as u32)
    }

    fn min_var(&self, m: usize) -> Option<(usize, u32)> {
        let mut m = m;
        for v in 0..self.n {
            let a = (m % self.p as usize) as u32;
            if a > 0 {
                return Some((v, a));
            }
            m /= self.p as usize;
        }
        None
    }

    /// `x_i · x^m` in normal form.
    pub(crate) fn gen_times(&mut self, i: usize, m: usize) -> Result<SparseRow> {
        if let Some(r) = self.memo.get(&(i, m)) {
            return Ok(r.clone());
        }
        if self.active.len() > MAX_DEPTH || self.active.contains(&(i, m)) {
            return Err(Error::StraighteningDiverged);
        }
        self.active.push((i, m));
        let out = self.gen_times_uncached(i, m);
        self.active.pop();
        let out = out?;
        self.memo.insert((i, m), out.clone());
        Ok(out)
    }

    fn gen_times_uncached(&mut self, i: usize, m: usize) -> Result<SparseRow> {
        let one = self.field.one();
        let Some((j, a)) = self.min_var(m) else {
            return Ok(vec![(self.power(i), one)]);
        };
        if i < j {
            return Ok(vec![(m + self.power(i), one)]);
        }
        if i == j {
            if a + 1 < self.p {
                return Ok(vec![(m + self.power(i), one)]);
            }
            let rest = m - a as usize * self.power(i);
            let mut acc = Acc::default();
            for (k, c) in self.pmap[i].clone() {
                acc.add_row(&self.gen_times(k, rest)?, c);
            }
            acc.add(rest, self.xi_p[i]);
            return Ok(acc.finish());
        }
        // x_i x_j = x_j x_i + [x_i, x_j]
        let rest = m - self.power(j);
        let mut acc = Acc::default();
        let swapped = self.gen_times(i, rest)?;
        for (t, c) in swapped {
            acc.add_row(&self.gen_times(j, t)?, c);
        }
        for (k, c) in self.brackets[i * self.n + j].clone() {
            acc.add_row(&self.gen_times(k, rest)?, c);
        }
        Ok(acc.finish())
    }

    /// `x_i · v` for a sparse vector `v`.
    pub(crate) fn apply_gen(&mut self, i: usize, v: &SparseRow) -> Result<SparseRow> {
        let mut acc = Acc::default();
        for &(m, c) in v {
            acc.add_row(&self.gen_times(i, m)?, c);
        }
        Ok(acc.finish())
    }

    /// `x · v` for an element `x` of the p-Lie algebra.
    pub(crate) fn apply_element(&mut self, x: &[Scalar], v: &SparseRow) -> Result<SparseRow> {
        let mut acc = Acc::default();
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc.add_row(&self.apply_gen(i, v)?, *c);
            }
        }
        Ok(acc.finish())
    }

    /// Multiplication table: row `a` holds `x^a · x^b` for every `b`.
    pub(crate) fn table(&mut self) -> Result<Vec<Vec<SparseRow>>> {
        let d = self.dim();
        let mut table: Vec<Vec<SparseRow>> = Vec::with_capacity(d);
        table.push((0..d).map(|b| vec![(b, self.field.one())]).collect());
        for a in 1..d {
            let (v, _) = self.min_var(a).expect("nonzero monomial");
            let prev = a - self.power(v);
            let mut row = Vec::with_capacity(d);
            for b in 0..d {
                let x = table[prev][b].clone();
                row.push(self.apply_gen(v, &x)?);
            }
            table.push(row);
        }
        Ok(table)
    }

    /// Checks that the generator operators satisfy the defining relations
    /// on every basis monomial. Returns the first violated relation.
    pub(crate) fn relation_failure(&mut self) -> Result<Option<(usize, usize)>> {
        let d = self.dim();
        for m in 0..d {
            let e = vec![(m, self.field.one())];
            for i in 0..self.n {
                let xi_e = self.apply_gen(i, &e)?;
                for j in 0..i {
                    let xj_e = self.apply_gen(j, &e)?;
                    let mut acc = Acc::default();
                    acc.add_row(&self.apply_gen(i, &xj_e)?, self.field.one());
                    acc.add_row(&self.apply_gen(j, &xi_e)?, -self.field.one());
                    let lhs = acc.finish();
                    let mut acc = Acc::default();
                    for (k, c) in self.brackets[i * self.n + j].clone() {
                        acc.add_row(&self.apply_gen(k, &e)?, c);
                    }
                    if lhs != acc.finish() {
                        return Ok(Some((i, j)));
                    }
                }
                let mut pw = e.clone();
                for _ in 0..self.p {
                    pw = self.apply_gen(i, &pw)?;
                }
                let mut acc = Acc::default();
                for (k, c) in self.pmap[i].clone() {
                    acc.add_row(&self.apply_gen(k, &e)?, c);
                }
                acc.add(m, self.xi_p[i]);
                if pw != acc.finish() {
                    return Ok(Some((i, i)));
                }
            }
        }
        Ok(None)
    }
}

fn binom_mod(n: u32, k: u32, field: Field) -> Scalar {
    let mut c: u64 = 1;
    for t in 0..k as u64 {
        c = c * (n as u64 - t) / (t + 1);
    }
    field.from_i64(c as i64)
}

fn algebra_from_table(field: Field, basis: Vec<String>, table: &[Vec<SparseRow>]) -> Result<AlgebraPresentation> {
    let d = basis.len();
    let mut mult = SparseTensor::zero(field, 3, d);
    for (a, row) in table.iter().enumerate() {
        for (b, r) in row.iter().enumerate() {
            for &(k, v) in r {
                mult.add_at(&[a, b, k], v);
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    AlgebraPresentation::new(field, basis, mult, unit)
}

/// The restricted enveloping Hopf algebra `u(L)` on the PBW basis.
pub fn enveloping(l: &PLiePresentation) -> Result<HopfPresentation> {
    let mut st = Straightener::new(l, None);
    let field = l.field();
    let (n, p, d) = (l.dim(), l.p(), st.dim());
    let basis: Vec<String> = (0..d).map(|m| pbw_label(l.names(), m, p)).collect();
    let table = st.table()?;
    let algebra = algebra_from_table(field, basis.clone(), &table)?;

    let mut images = Vec::with_capacity(d);
    for m in 0..d {
        let a = pbw_exponents(m, n, p);
        let mut t = SparseTensor::zero(field, 2, d);
        let mut c = vec![0u32; n];
        loop {
            let coeff = (0..n).fold(field.one(), |acc, i| acc * binom_mod(a[i], c[i], field));
            let rest: Vec<u32> = (0..n).map(|i| a[i] - c[i]).collect();
            t.add_at(&[pbw_index(&c, p), pbw_index(&rest, p)], coeff);
            // odometer over c ≤ a
            let mut v = 0;
            while v < n && c[v] == a[v] {
                c[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
            c[v] += 1;
        }
        images.push(t);
    }
    let mut counit = vec![field.zero(); d];
    counit[0] = field.one();
    let coalgebra = CoalgebraPresentation::from_images(field, basis, images, counit)?;

    let mut antipode = Matrix::zeros(field, d, d);
    for m in 0..d {
        let a = pbw_exponents(m, n, p);
        let mut v: SparseRow = vec![(0, field.one())];
        for (i, &ai) in a.iter().enumerate() {
            for _ in 0..ai {
                v = st.apply_gen(i, &v)?;
            }
        }
        let sign = if a.iter().sum::<u32>() % 2 == 1 { -field.one() } else { field.one() };
        for (k, c) in v {
            antipode[(k, m)] = sign * c;
        }
    }
    HopfPresentation::new(algebra, coalgebra, antipode)
}

/// The reduced enveloping algebra `u_ξ(L)`, an algebra only.
pub fn reduced_enveloping(l: &PLiePresentation, xi: &LinearFunctional) -> Result<AlgebraPresentation> {
    if xi.0.len() != l.dim() {
        return Err(Error::Shape(format!("functional of length {} on a {}-dimensional algebra", xi.0.len(), l.dim())));
    }
    let mut st = Straightener::new(l, Some(xi));
    let d = st.dim();
    let basis: Vec<String> = (0..d).map(|m| pbw_label(l.names(), m, l.p())).collect();
    let table = st.table()?;
    algebra_from_table(l.field(), basis, &table)
}

/// The algebra map `u(sub) → u(l)` induced by sending the `k`-th basis
/// vector of `sub` to `images[k] ∈ l`; columns are images of PBW monomials.
pub fn pbw_inclusion(sub: &PLiePresentation, l: &PLiePresentation, images: &[Vec<Scalar>]) -> Result<Matrix> {
    if images.len() != sub.dim() || images.iter().any(|v| v.len() != l.dim()) || sub.p() != l.p() {
        return Err(Error::Shape("inclusion images do not match the two algebras".into()));
    }
    let mut st = Straightener::new(l, None);
    let p = l.p();
    let ds = (p as usize).pow(sub.dim() as u32);
    let d = st.dim();
    let mut out = Matrix::zeros(l.field(), d, ds);
    for m in 0..ds {
        let a = pbw_exponents(m, sub.dim(), p);
        let mut v: SparseRow = vec![(0, l.field().one())];
        for k in (0..sub.dim()).rev() {
            for _ in 0..a[k] {
                v = st.apply_element(&images[k], &v)?;
            }
        }
        for (i, c) in v {
            out[(i, m)] = c;
        }
    }
    Ok(out)
}
