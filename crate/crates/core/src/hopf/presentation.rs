use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Field, Matrix, Scalar, SparseRow, SparseTensor, SubspaceBuilder, MAX_ARITY};

/// A finite-dimensional algebra given by structure constants:
/// `b_i b_j = Σ_k mult[i, j, k] b_k`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    field: Field,
    basis: Vec<String>,
    mult: SparseTensor,
    unit: Vec<Scalar>,
    table: Vec<SparseRow>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.basis == other.basis && self.mult == other.mult && self.unit == other.unit
    }
}

impl AlgebraPresentation {
    pub fn new(field: Field, basis: Vec<String>, mult: SparseTensor, unit: Vec<Scalar>) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::Shape("empty basis".into()));
        }
        if mult.arity() != 3 || mult.dim() != d {
            return Err(Error::Shape(format!("multiplication tensor must be {d}^3")));
        }
        if unit.len() != d {
            return Err(Error::Shape(format!("unit has {} coordinates, expected {d}", unit.len())));
        }
        if mult.field() != field || unit.iter().any(|s| s.field() != field) {
            return Err(Error::Input(format!("structure constants outside {field}")));
        }
        let mut table = vec![Vec::new(); d * d];
        for (flat, v) in mult.iter_flat() {
            table[flat / d].push((flat % d, v));
        }
        Ok(AlgebraPresentation { field, basis, mult, unit, table, generators: OnceLock::new() })
    }

    /// Builds the table from a product function on basis indices.
    pub fn from_fn(
        field: Field,
        basis: Vec<String>,
        unit: Vec<Scalar>,
        product: impl Fn(usize, usize) -> SparseRow,
    ) -> Result<Self> {
        let d = basis.len();
        let mut mult = SparseTensor::zero(field, 3, d);
        for i in 0..d {
            for j in 0..d {
                for (k, v) in product(i, j) {
                    mult.add_at(&[i, j, k], v);
                }
            }
        }
        Self::new(field, basis, mult, unit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn mult(&self) -> &SparseTensor {
        &self.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn with_basis(&self, basis: Vec<String>) -> Result<Self> {
        Self::new(self.field, basis, self.mult.clone(), self.unit.clone())
    }

    /// Expansion of `b_i b_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &SparseRow {
        &self.table[i * self.dim() + j]
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    /// Product of dense vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = *a * *b;
                for &(k, v) in self.product(i, j) {
                    out[k] += c * v;
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], n: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<SparseRow> = (0..d).map(|j| dense_to_row(&self.mul(x, &self.basis_vec(j)))).collect();
        Matrix::from_sparse_columns(self.field, d, &cols)
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<SparseRow> = (0..d).map(|j| dense_to_row(&self.mul(&self.basis_vec(j), x))).collect();
        Matrix::from_sparse_columns(self.field, d, &cols)
    }

    /// Multiplicative inverse of a dense element, if any.
    pub fn inverse(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let z = self.left_mult_matrix(x).solve(&self.unit).ok()??;
        (self.mul(&z, x) == self.unit).then_some(z)
    }

    /// Product in `A^{⊗k}`, computed slot by slot from the structure constants.
    pub fn tensor_mul(&self, x: &SparseTensor, y: &SparseTensor) -> Result<SparseTensor> {
        self.check_tensor(x)?;
        self.check_tensor(y)?;
        if x.arity() != y.arity() {
            return Err(Error::Shape(format!("arity {} times arity {}", x.arity(), y.arity())));
        }
        let k = x.arity();
        let d = self.dim();
        let mut acc = Accumulator::new(self.field, k, d);
        let empty: SparseRow = Vec::new();
        let mut rows: [&SparseRow; MAX_ARITY] = [&empty; MAX_ARITY];
        for (fx, cx) in x.iter_flat() {
            let tx = x.decode(fx);
            for (fy, cy) in y.iter_flat() {
                let ty = y.decode(fy);
                let mut live = true;
                for s in 0..k {
                    rows[s] = self.product(tx[s], ty[s]);
                    if rows[s].is_empty() {
                        live = false;
                        break;
                    }
                }
                if live {
                    expand(&rows[..k], cx * cy, 0, d, &mut acc);
                }
            }
        }
        Ok(acc.finish())
    }

    /// `1^{⊗k}`.
    pub fn unit_tensor(&self, k: usize) -> SparseTensor {
        let u = SparseTensor::from_vector(self.field, &self.unit);
        (1..k).fold(u.clone(), |acc, _| acc.outer(&u).expect("same space"))
    }

    /// Columns of the operator `z ↦ z · y` on `A^{⊗k}`, one per basis tensor.
    pub fn right_mult_columns(&self, y: &SparseTensor) -> Result<Vec<SparseRow>> {
        self.check_tensor(y)?;
        let k = y.arity();
        let d = self.dim();
        let n = d.pow(k as u32);
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let e = SparseTensor::from_entries(self.field, k, d, [(decode(c, k, d), self.field.one())])?;
            cols.push(self.tensor_mul(&e, y)?.iter_flat().collect());
        }
        Ok(cols)
    }

    /// Columns of `z ↦ y · z`.
    pub fn left_mult_columns(&self, y: &SparseTensor) -> Result<Vec<SparseRow>> {
        self.check_tensor(y)?;
        let k = y.arity();
        let d = self.dim();
        let n = d.pow(k as u32);
        (0..n)
            .map(|c| {
                let e = SparseTensor::from_entries(self.field, k, d, [(decode(c, k, d), self.field.one())])?;
                Ok(self.tensor_mul(y, &e)?.iter_flat().collect())
            })
            .collect()
    }

    /// Inverse in `A^{⊗k}`: solves `x z = 1` exactly and confirms `z x = 1`.
    pub fn tensor_inverse(&self, x: &SparseTensor) -> Result<SparseTensor> {
        let k = x.arity();
        let d = self.dim();
        let cols = self.left_mult_columns(x)?;
        let n = cols.len();
        let one = self.unit_tensor(k);
        let m = crate::linalg::SparseMatrix::from_columns(self.field, n, &cols);
        let rhs = one.to_dense();
        let z = if n <= crate::linalg::DENSE_LIMIT {
            m.to_dense().solve(&rhs)?
        } else {
            let mut aug = m;
            for (i, v) in rhs.iter().enumerate() {
                if !v.is_zero() {
                    aug.rows[i].push((n, *v));
                }
            }
            aug.cols = n + 1;
            aug.echelon().solve_augmented()
        };
        let z = z.ok_or(Error::NotInvertible)?;
        let z = SparseTensor::from_dense(self.field, k, d, &z);
        if self.tensor_mul(&z, x)? != one {
            return Err(Error::NotInvertible);
        }
        Ok(z)
    }

    pub fn tensor_pow(&self, x: &SparseTensor, n: u64) -> Result<SparseTensor> {
        let mut acc = self.unit_tensor(x.arity());
        for _ in 0..n {
            acc = self.tensor_mul(&acc, x)?;
        }
        Ok(acc)
    }

    fn check_tensor(&self, x: &SparseTensor) -> Result<()> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch(x.field(), self.field));
        }
        if x.dim() != self.dim() {
            return Err(Error::Shape(format!("tensor over dim {} in algebra of dim {}", x.dim(), self.dim())));
        }
        Ok(())
    }

    /// A set of basis elements generating the algebra, chosen greedily in
    /// basis order; cached.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = SubspaceBuilder::new(self.field, self.dim());
            span.insert(&self.unit);
            for b in 0..self.dim() {
                if span.rank() == self.dim() {
                    break;
                }
                if span.contains(&self.basis_vec(b)) {
                    continue;
                }
                gens.push(b);
                span = self.subalgebra_span(&gens);
            }
            gens
        })
    }

    /// Span of all products of the given basis elements (including 1).
    pub fn subalgebra_span(&self, gens: &[usize]) -> SubspaceBuilder {
        let mut span = SubspaceBuilder::new(self.field, self.dim());
        span.insert(&self.unit);
        let mut frontier = vec![self.unit.clone()];
        while let Some(v) = frontier.pop() {
            for &g in gens {
                let w = self.mul(&v, &self.basis_vec(g));
                if span.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        span
    }

    /// First pair of basis elements that do not commute.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).find(|&(i, j)| self.product(i, j) != self.product(j, i))
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }
}

fn expand(rows: &[&SparseRow], coeff: Scalar, prefix: usize, d: usize, acc: &mut Accumulator) {
    match rows.split_first() {
        None => acc.add(prefix, coeff),
        Some((first, rest)) => {
            for &(i, v) in first.iter() {
                expand(rest, coeff * v, prefix * d + i, d, acc);
            }
        }
    }
}

pub(crate) fn decode(mut flat: usize, k: usize, d: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for s in (0..k).rev() {
        t[s] = flat % d;
        flat /= d;
    }
    t
}

pub(crate) fn dense_to_row(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, *x)).collect()
}

/// A finite-dimensional coalgebra: `Δ(b_k) = Σ comult[k, i, j] b_i ⊗ b_j`.
#[derive(Clone, Debug)]
pub struct CoalgebraPresentation {
    field: Field,
    basis: Vec<String>,
    comult: SparseTensor,
    counit: Vec<Scalar>,
    images: Vec<SparseTensor>,
}

impl PartialEq for CoalgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.basis == other.basis
            && self.comult == other.comult
            && self.counit == other.counit
    }
}

impl CoalgebraPresentation {
    pub fn new(field: Field, basis: Vec<String>, comult: SparseTensor, counit: Vec<Scalar>) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::Shape("empty basis".into()));
        }
        if comult.arity() != 3 || comult.dim() != d {
            return Err(Error::Shape(format!("comultiplication tensor must be {d}^3")));
        }
        if counit.len() != d {
            return Err(Error::Shape(format!("counit has {} coordinates, expected {d}", counit.len())));
        }
        if comult.field() != field || counit.iter().any(|s| s.field() != field) {
            return Err(Error::Input(format!("structure constants outside {field}")));
        }
        let mut images = vec![SparseTensor::zero(field, 2, d); d];
        for (flat, v) in comult.iter_flat() {
            images[flat / (d * d)].add_flat(flat % (d * d), v);
        }
        Ok(CoalgebraPresentation { field, basis, comult, counit, images })
    }

    /// Builds the coalgebra from the images `Δ(b_k)`.
    pub fn from_images(
        field: Field,
        basis: Vec<String>,
        images: Vec<SparseTensor>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let d = basis.len();
        let mut comult = SparseTensor::zero(field, 3, d);
        for (k, img) in images.iter().enumerate() {
            if img.arity() != 2 || img.dim() != d {
                return Err(Error::Shape(format!("Δ(b_{k}) is not in the tensor square")));
            }
            for (flat, v) in img.iter_flat() {
                comult.add_flat(k * d * d + flat, v);
            }
        }
        Self::new(field, basis, comult, counit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn comult(&self) -> &SparseTensor {
        &self.comult
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn with_basis(&self, basis: Vec<String>) -> Result<Self> {
        Self::new(self.field, basis, self.comult.clone(), self.counit.clone())
    }

    /// `Δ(b_k)` as an arity-2 tensor.
    pub fn coproduct(&self, k: usize) -> &SparseTensor {
        &self.images[k]
    }

    /// `Δ` of a dense element.
    pub fn coproduct_of(&self, x: &[Scalar]) -> SparseTensor {
        let d = self.dim();
        let mut out = SparseTensor::zero(self.field, 2, d);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (flat, v) in self.images[k].iter_flat() {
                out.add_flat(flat, *c * v);
            }
        }
        out
    }

    /// Applies `Δ` to one slot of a tensor; the arity grows by one.
    pub fn coproduct_at(&self, x: &SparseTensor, slot: usize) -> Result<SparseTensor> {
        let k = x.arity();
        if slot >= k || k + 1 > MAX_ARITY || x.dim() != self.dim() {
            return Err(Error::Shape(format!("cannot apply Δ at slot {slot} of arity {k}")));
        }
        let d = self.dim();
        let mut out = SparseTensor::zero(self.field, k + 1, d);
        let mut idx = [0usize; MAX_ARITY];
        for (flat, c) in x.iter_flat() {
            let t = x.decode(flat);
            for (pair, v) in self.images[t[slot]].iter_flat() {
                idx[..slot].copy_from_slice(&t[..slot]);
                idx[slot] = pair / d;
                idx[slot + 1] = pair % d;
                idx[slot + 2..k + 1].copy_from_slice(&t[slot + 1..k]);
                out.add_at(&idx[..k + 1], c * v);
            }
        }
        Ok(out)
    }

    /// Applies `ε` to one slot; an arity-1 input yields a dimension-1 tensor
    /// holding the scalar.
    pub fn counit_at(&self, x: &SparseTensor, slot: usize) -> Result<SparseTensor> {
        let k = x.arity();
        if slot >= k || x.dim() != self.dim() {
            return Err(Error::Shape(format!("cannot apply ε at slot {slot} of arity {k}")));
        }
        let eps = SparseTensor::from_vector(self.field, &self.counit);
        x.contract(&eps, &[(slot, 0)])
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (a, b) in x.iter().zip(&self.counit) {
            acc += *a * *b;
        }
        acc
    }

    /// First basis element whose coproduct is not symmetric.
    pub fn noncocommuting_element(&self) -> Option<usize> {
        (0..self.dim()).find(|&k| self.images[k].swap21() != self.images[k])
    }

    pub fn is_cocommutative(&self) -> bool {
        self.noncocommuting_element().is_none()
    }
}

/// A Hopf algebra: algebra and coalgebra on one basis plus the antipode,
/// stored as the matrix whose `j`-th column is `S(b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfPresentation {
    pub(crate) algebra: AlgebraPresentation,
    pub(crate) coalgebra: CoalgebraPresentation,
    pub(crate) antipode: Matrix,
}

impl HopfPresentation {
    pub fn new(algebra: AlgebraPresentation, coalgebra: CoalgebraPresentation, antipode: Matrix) -> Result<Self> {
        let d = algebra.dim();
        if coalgebra.dim() != d || antipode.rows() != d || antipode.cols() != d {
            return Err(Error::Shape("algebra, coalgebra and antipode dimensions differ".into()));
        }
        if coalgebra.field() != algebra.field() || antipode.field() != algebra.field() {
            return Err(Error::FieldMismatch(algebra.field(), coalgebra.field()));
        }
        if coalgebra.basis() != algebra.basis() {
            return Err(Error::Input("algebra and coalgebra basis labels differ".into()));
        }
        Ok(HopfPresentation { algebra, coalgebra, antipode })
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial(field: Field) -> Self {
        let one = field.one();
        let mult = SparseTensor::basis(field, 1, &[0, 0, 0], one);
        let comult = mult.clone();
        let basis = vec!["1".to_string()];
        HopfPresentation {
            algebra: AlgebraPresentation::new(field, basis.clone(), mult, vec![one]).expect("valid"),
            coalgebra: CoalgebraPresentation::new(field, basis, comult, vec![one]).expect("valid"),
            antipode: Matrix::identity(field, 1),
        }
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &CoalgebraPresentation {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self) -> &[String] {
        self.algebra.basis()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.algebra.basis()[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis().iter().position(|b| b == label)
    }

    pub fn with_basis(&self, basis: Vec<String>) -> Result<Self> {
        Self::new(self.algebra.with_basis(basis.clone())?, self.coalgebra.with_basis(basis)?, self.antipode.clone())
    }

    /// Replaces the coproduct and antipode, keeping the algebra.
    pub fn with_coalgebra(&self, coalgebra: CoalgebraPresentation, antipode: Matrix) -> Result<Self> {
        Self::new(self.algebra.clone(), coalgebra, antipode)
    }

    /// Same structure constants, ignoring basis labels.
    pub fn same_tables(&self, other: &HopfPresentation) -> bool {
        self.field() == other.field()
            && self.algebra.mult() == other.algebra.mult()
            && self.algebra.unit() == other.algebra.unit()
            && self.coalgebra.comult() == other.coalgebra.comult()
            && self.coalgebra.counit() == other.coalgebra.counit()
            && self.antipode == other.antipode
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        self.coalgebra.is_cocommutative()
    }

    pub fn antipode_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(x).expect("square antipode")
    }

    /// Applies `S` to one slot.
    pub fn antipode_at(&self, x: &SparseTensor, slot: usize) -> Result<SparseTensor> {
        apply_map_at(x, slot, &self.antipode)
    }

    /// Places the slots of `x` at `positions` inside `H^{⊗arity}`, filling
    /// the other slots with the unit: `embed(J, [0, 2], 3) = J_{13}`.
    pub fn embed(&self, x: &SparseTensor, positions: &[usize], arity: usize) -> Result<SparseTensor> {
        if positions.len() != x.arity() || positions.iter().any(|&p| p >= arity) || arity > MAX_ARITY {
            return Err(Error::Shape(format!("cannot place arity {} at {positions:?} in {arity}", x.arity())));
        }
        let others: Vec<usize> = (0..arity).filter(|s| !positions.contains(s)).collect();
        let unit: Vec<(usize, Scalar)> = dense_to_row(self.algebra.unit());
        let d = self.dim();
        let mut out = SparseTensor::zero(self.field(), arity, d);
        let mut idx = [0usize; MAX_ARITY];
        for (flat, c) in x.iter_flat() {
            let t = x.decode(flat);
            for (s, &p) in positions.iter().enumerate() {
                idx[p] = t[s];
            }
            fill_units(&others, &unit, c, &mut idx, arity, &mut out);
        }
        Ok(out)
    }
}

fn fill_units(
    others: &[usize],
    unit: &[(usize, Scalar)],
    c: Scalar,
    idx: &mut [usize; MAX_ARITY],
    arity: usize,
    out: &mut SparseTensor,
) {
    match others.split_first() {
        None => out.add_at(&idx[..arity], c),
        Some((&s, rest)) => {
            for &(u, v) in unit {
                idx[s] = u;
                fill_units(rest, unit, c * v, idx, arity, out);
            }
        }
    }
}

/// Applies a linear map (matrix whose columns are images of basis vectors)
/// to one slot of a tensor.
pub fn apply_map_at(x: &SparseTensor, slot: usize, map: &Matrix) -> Result<SparseTensor> {
    let k = x.arity();
    if slot >= k || map.cols() != x.dim() {
        return Err(Error::Shape(format!("cannot apply a {}x{} map at slot {slot}", map.rows(), map.cols())));
    }
    let d_out = map.rows();
    if d_out != x.dim() {
        return Err(Error::Shape("slot maps must preserve the space".into()));
    }
    let cols: Vec<SparseRow> = (0..map.cols()).map(|j| dense_to_row(&map.column(j))).collect();
    let mut out = SparseTensor::zero(x.field(), k, d_out);
    let mut idx = [0usize; MAX_ARITY];
    for (flat, c) in x.iter_flat() {
        let t = x.decode(flat);
        idx[..k].copy_from_slice(&t[..k]);
        for &(i, v) in &cols[t[slot]] {
            idx[slot] = i;
            out.add_at(&idx[..k], c * v);
        }
    }
    Ok(out)
}
