use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Largest supported tensor arity. Tuples are decoded into stack arrays of
/// this length in the hot loops.
pub const MAX_ARITY: usize = 8;

pub type Tuple = [usize; MAX_ARITY];

/// A sparse tensor in `V^{⊗arity}` with `dim V = dim`.
///
/// Entries are keyed by the flat mixed-radix index of the tuple, first slot
/// most significant, so iteration order is lexicographic in the tuple.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseTensor {
    field: Field,
    arity: usize,
    dim: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl SparseTensor {
    pub fn zero(field: Field, arity: usize, dim: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "arity {arity} out of range");
        assert!(dim > 0, "tensor slots must have positive dimension");
        assert!(dim.checked_pow(arity as u32).is_some(), "{dim}^{arity} overflows the flat index");
        SparseTensor { field, arity, dim, entries: BTreeMap::new() }
    }

    /// The pure tensor `e_{i_1} ⊗ … ⊗ e_{i_k}` scaled by `coeff`.
    pub fn basis(field: Field, dim: usize, idx: &[usize], coeff: Scalar) -> Self {
        let mut t = Self::zero(field, idx.len(), dim);
        t.add_at(idx, coeff);
        t
    }

    pub fn from_entries<I>(field: Field, arity: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = Self::zero(field, arity, dim);
        for (idx, v) in entries {
            if idx.len() != arity || idx.iter().any(|&i| i >= dim) {
                return Err(Error::Shape(format!("index {idx:?} outside {dim}^{arity}")));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(v.field(), field));
            }
            t.add_at(&idx, v);
        }
        Ok(t)
    }

    /// Dense vector as an arity-1 tensor.
    pub fn from_vector(field: Field, v: &[Scalar]) -> Self {
        let mut t = Self::zero(field, 1, v.len().max(1));
        for (i, x) in v.iter().enumerate() {
            t.add_flat(i, *x);
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dim^arity`.
    pub fn space_dim(&self) -> usize {
        self.dim.pow(self.arity as u32)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    #[inline]
    pub fn decode(&self, mut flat: usize) -> Tuple {
        let mut t = [0usize; MAX_ARITY];
        for s in (0..self.arity).rev() {
            t[s] = flat % self.dim;
            flat /= self.dim;
        }
        t
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.entries.get(&self.flat_index(idx)).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn get_flat(&self, flat: usize) -> Scalar {
        self.entries.get(&flat).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_at(&mut self, idx: &[usize], v: Scalar) {
        debug_assert_eq!(idx.len(), self.arity);
        let flat = self.flat_index(idx);
        self.add_flat(flat, v);
    }

    pub fn add_flat(&mut self, flat: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry(flat).or_insert_with(|| self.field.zero());
        *e += v;
        if e.is_zero() {
            self.entries.remove(&flat);
        }
    }

    /// `(flat index, coefficient)` pairs in increasing index order.
    pub fn iter_flat(&self) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// `(tuple, coefficient)` pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (self.decode(*k)[..self.arity].to_vec(), *v))
    }

    fn check_compatible(&self, other: &SparseTensor) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.arity != other.arity || self.dim != other.dim {
            return Err(Error::Shape(format!("{}^{} vs {}^{}", self.dim, self.arity, other.dim, other.arity)));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseTensor) -> Result<SparseTensor> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in other.iter_flat() {
            out.add_flat(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseTensor) -> Result<SparseTensor> {
        self.add(&other.scale(-self.field.one()))
    }

    pub fn scale(&self, c: Scalar) -> SparseTensor {
        let mut out = SparseTensor::zero(self.field, self.arity, self.dim);
        if c.is_zero() {
            return out;
        }
        for (k, v) in self.iter_flat() {
            out.entries.insert(k, v * c);
        }
        out
    }

    /// `self ⊗ other`, slots of `self` first.
    pub fn outer(&self, other: &SparseTensor) -> Result<SparseTensor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.dim != other.dim {
            return Err(Error::Shape("outer product of tensors over different spaces".into()));
        }
        let mut out = SparseTensor::zero(self.field, self.arity + other.arity, self.dim);
        let shift = other.space_dim();
        for (a, x) in self.iter_flat() {
            for (b, y) in other.iter_flat() {
                out.entries.insert(a * shift + b, x * y);
            }
        }
        Ok(out)
    }

    /// Reorders slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<SparseTensor> {
        let mut seen = [false; MAX_ARITY];
        if perm.len() != self.arity || perm.iter().any(|&s| s >= self.arity || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation of {} slots", self.arity)));
        }
        let mut out = SparseTensor::zero(self.field, self.arity, self.dim);
        let mut idx = [0usize; MAX_ARITY];
        for (k, v) in self.iter_flat() {
            let t = self.decode(k);
            for (s, &src) in perm.iter().enumerate() {
                idx[s] = t[src];
            }
            out.entries.insert(out.flat_index(&idx[..self.arity]), v);
        }
        Ok(out)
    }

    /// The flip `x_{21}` of an arity-2 tensor.
    pub fn swap21(&self) -> SparseTensor {
        self.permute(&[1, 0]).expect("arity-2 tensor")
    }

    /// Contracts slot `a` of `self` against slot `b` of `other` for every
    /// `(a, b)` in `pairs`. The result carries the remaining slots of `self`
    /// followed by the remaining slots of `other`, each in original order.
    /// A full contraction yields an arity-1 tensor of dimension 1 holding the
    /// scalar.
    pub fn contract(&self, other: &SparseTensor, pairs: &[(usize, usize)]) -> Result<SparseTensor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.dim != other.dim {
            return Err(Error::Shape(format!("paired slots of dimension {} and {}", self.dim, other.dim)));
        }
        let mut used_a = [false; MAX_ARITY];
        let mut used_b = [false; MAX_ARITY];
        for &(a, b) in pairs {
            if a >= self.arity || b >= other.arity || used_a[a] || used_b[b] {
                return Err(Error::Shape(format!("invalid slot pairing {pairs:?}")));
            }
            used_a[a] = true;
            used_b[b] = true;
        }
        let free_a: Vec<usize> = (0..self.arity).filter(|s| !used_a[*s]).collect();
        let free_b: Vec<usize> = (0..other.arity).filter(|s| !used_b[*s]).collect();
        let out_arity = free_a.len() + free_b.len();
        let (out_arity, out_dim) = if out_arity == 0 { (1, 1) } else { (out_arity, self.dim) };
        if out_arity > MAX_ARITY {
            return Err(Error::Shape(format!("contraction result of arity {out_arity}")));
        }
        let mut out = SparseTensor::zero(self.field, out_arity, out_dim);

        // Bucket `other` by the values of its paired slots.
        let mut buckets: BTreeMap<Vec<usize>, Vec<(Tuple, Scalar)>> = BTreeMap::new();
        for (k, v) in other.iter_flat() {
            let t = other.decode(k);
            let key: Vec<usize> = pairs.iter().map(|&(_, b)| t[b]).collect();
            buckets.entry(key).or_default().push((t, v));
        }
        let mut idx = [0usize; MAX_ARITY];
        for (k, x) in self.iter_flat() {
            let ta = self.decode(k);
            let key: Vec<usize> = pairs.iter().map(|&(a, _)| ta[a]).collect();
            let Some(matches) = buckets.get(&key) else { continue };
            for (s, &a) in free_a.iter().enumerate() {
                idx[s] = ta[a];
            }
            for (tb, y) in matches {
                for (s, &b) in free_b.iter().enumerate() {
                    idx[free_a.len() + s] = tb[b];
                }
                let flat = if free_a.is_empty() && free_b.is_empty() { 0 } else { out.flat_index(&idx[..out_arity]) };
                out.add_flat(flat, x * *y);
            }
        }
        Ok(out)
    }

    /// Dense coefficient vector of length `dim^arity`.
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.space_dim()];
        for (k, x) in self.iter_flat() {
            v[k] = x;
        }
        v
    }

    pub fn from_dense(field: Field, arity: usize, dim: usize, v: &[Scalar]) -> SparseTensor {
        let mut t = SparseTensor::zero(field, arity, dim);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                t.entries.insert(k, *x);
            }
        }
        t
    }
}

impl fmt::Debug for SparseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseTensor[{}^{} over {}]{{", self.dim, self.arity, self.field)?;
        for (i, (idx, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{idx:?}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Accumulates contributions to a tensor; dense storage for spaces up to
/// `2^20` coordinates, a map above that.
pub(crate) enum Accumulator {
    Dense { field: Field, arity: usize, dim: usize, data: Vec<Scalar> },
    Sparse(SparseTensor),
}

impl Accumulator {
    pub(crate) fn new(field: Field, arity: usize, dim: usize) -> Self {
        let size = dim.pow(arity as u32);
        if size <= 1 << 20 {
            Accumulator::Dense { field, arity, dim, data: vec![field.zero(); size] }
        } else {
            Accumulator::Sparse(SparseTensor::zero(field, arity, dim))
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, flat: usize, v: Scalar) {
        match self {
            Accumulator::Dense { data, .. } => data[flat] += v,
            Accumulator::Sparse(t) => t.add_flat(flat, v),
        }
    }

    pub(crate) fn finish(self) -> SparseTensor {
        match self {
            Accumulator::Dense { field, arity, dim, data } => SparseTensor::from_dense(field, arity, dim, &data),
            Accumulator::Sparse(t) => t,
        }
    }
}
