use serde::{Deserialize, Serialize};

use super::{AlgebraPresentation, CoalgebraPresentation, HopfPresentation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SparseTensor};

/// Wire form of a [`HopfPresentation`]. Every entry is a list of indices
/// followed by a numerator and an optional denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<i64>>,
    pub unit: Vec<Vec<i64>>,
    pub comult: Vec<Vec<i64>>,
    pub counit: Vec<Vec<i64>>,
    pub antipode: Vec<Vec<i64>>,
}

pub(crate) fn field_from_json(name: &str, p: Option<u32>) -> Result<Field> {
    match (name, p) {
        ("Q", _) => Ok(Field::Q),
        ("Fp", Some(p)) => Field::prime(p as u64),
        ("Fp", None) => Err(Error::Input("field Fp needs a prime `p`".into())),
        (other, _) => Err(Error::Input(format!("unknown field {other:?}"))),
    }
}

pub(crate) fn field_to_json(field: Field) -> (String, Option<u32>) {
    match field {
        Field::Q => ("Q".into(), None),
        Field::Fp(p) => ("Fp".into(), Some(p)),
    }
}

fn entry(idx: &[usize], v: Scalar) -> Vec<i64> {
    let (num, den) = v.to_fraction();
    let mut e: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
    e.push(num);
    if den != 1 {
        e.push(den);
    }
    e
}

fn parse_entry(field: Field, e: &[i64], arity: usize, dim: usize) -> Result<(Vec<usize>, Scalar)> {
    if e.len() != arity + 1 && e.len() != arity + 2 {
        return Err(Error::Input(format!(
            "entry {e:?} needs {arity} indices, a numerator and an optional denominator"
        )));
    }
    let idx = e[..arity]
        .iter()
        .map(|&i| usize::try_from(i).ok().filter(|&i| i < dim))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::Input(format!("entry {e:?} has an index outside 0..{dim}")))?;
    let den = e.get(arity + 1).copied().unwrap_or(1);
    Ok((idx, field.from_fraction(e[arity], den)?))
}

fn tensor_from(field: Field, entries: &[Vec<i64>], arity: usize, dim: usize) -> Result<SparseTensor> {
    let mut t = SparseTensor::zero(field, arity, dim);
    for e in entries {
        let (idx, v) = parse_entry(field, e, arity, dim)?;
        t.add_at(&idx, v);
    }
    Ok(t)
}

fn vector_from(field: Field, entries: &[Vec<i64>], dim: usize) -> Result<Vec<Scalar>> {
    Ok(tensor_from(field, entries, 1, dim)?.to_dense())
}

fn vector_entries(v: &[Scalar]) -> Vec<Vec<i64>> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| entry(&[i], *x)).collect()
}

impl HopfJson {
    pub fn from_hopf(h: &HopfPresentation) -> Self {
        let (field, p) = field_to_json(h.field());
        let d = h.dim();
        let mut antipode = Vec::new();
        for j in 0..d {
            for i in 0..d {
                let v = h.antipode()[(i, j)];
                if !v.is_zero() {
                    antipode.push(entry(&[j, i], v));
                }
            }
        }
        HopfJson {
            field,
            p,
            dim: d,
            basis: h.basis().to_vec(),
            mult: h.algebra().mult().iter().map(|(i, v)| entry(&i, v)).collect(),
            unit: vector_entries(h.algebra().unit()),
            comult: h.coalgebra().comult().iter().map(|(i, v)| entry(&i, v)).collect(),
            counit: vector_entries(h.coalgebra().counit()),
            antipode,
        }
    }

    pub fn to_hopf(&self) -> Result<HopfPresentation> {
        let field = field_from_json(&self.field, self.p)?;
        let d = self.dim;
        if self.basis.len() != d {
            return Err(Error::Input(format!("{} basis labels for dim {d}", self.basis.len())));
        }
        let mult = tensor_from(field, &self.mult, 3, d)?;
        let comult = tensor_from(field, &self.comult, 3, d)?;
        let unit = vector_from(field, &self.unit, d)?;
        let counit = vector_from(field, &self.counit, d)?;
        let mut antipode = Matrix::zeros(field, d, d);
        for e in &self.antipode {
            let (idx, v) = parse_entry(field, e, 2, d)?;
            antipode[(idx[1], idx[0])] += v;
        }
        HopfPresentation::new(
            AlgebraPresentation::new(field, self.basis.clone(), mult, unit)?,
            CoalgebraPresentation::new(field, self.basis.clone(), comult, counit)?,
            antipode,
        )
    }
}

impl HopfPresentation {
    /// Compact JSON with a fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&HopfJson::from_hopf(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<HopfJson>(s)?.to_hopf()
    }
}

/// One term of a tensor: basis labels per slot and a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub labels: Vec<String>,
    pub num: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub den: i64,
}

fn one() -> i64 {
    1
}

fn is_one(d: &i64) -> bool {
    *d == 1
}

/// An element of `H^{⊗k}` keyed by basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

pub fn tensor_to_json(h: &HopfPresentation, x: &SparseTensor) -> TensorJson {
    TensorJson {
        arity: x.arity(),
        terms: x
            .iter()
            .map(|(idx, v)| {
                let (num, den) = v.to_fraction();
                TermJson { labels: idx.iter().map(|&i| h.label(i).to_string()).collect(), num, den }
            })
            .collect(),
    }
}

pub fn tensor_from_json(h: &HopfPresentation, t: &TensorJson) -> Result<SparseTensor> {
    let mut x = SparseTensor::zero(h.field(), t.arity, h.dim());
    for term in &t.terms {
        if term.labels.len() != t.arity {
            return Err(Error::Input(format!("term {:?} does not have arity {}", term.labels, t.arity)));
        }
        let idx = term
            .labels
            .iter()
            .map(|l| h.index_of(l).ok_or_else(|| Error::Input(format!("unknown basis label {l:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        x.add_at(&idx, h.field().from_fraction(term.num, term.den)?);
    }
    Ok(x)
}
