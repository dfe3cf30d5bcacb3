//! p-Lie algebras and their restricted and reduced enveloping algebras.

mod pbw;

use serde::{Deserialize, Serialize};

pub use pbw::{enveloping, pbw_exponents, pbw_inclusion, pbw_index, pbw_label, reduced_enveloping};

use crate::error::{Error, Result};
use crate::hopf::witness;
use crate::linalg::{Field, Matrix, Scalar, SparseTensor};
use crate::report::CheckReport;

/// A p-Lie algebra: `[x_i, x_j] = Σ_k bracket[i, j, k] x_k` and the
/// p-map on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct PLiePresentation {
    p: u32,
    names: Vec<String>,
    bracket: SparseTensor,
    pmap: Vec<Vec<Scalar>>,
}

/// A covector `ξ` on a p-Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional(pub Vec<Scalar>);

impl LinearFunctional {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let f = self.0[0].field();
        self.0.iter().zip(x).fold(f.zero(), |acc, (a, b)| acc + *a * *b)
    }
}

impl PLiePresentation {
    pub fn new(p: u32, names: Vec<String>, bracket: SparseTensor, pmap: Vec<Vec<Scalar>>) -> Result<Self> {
        let field = Field::prime(p as u64)?;
        let n = names.len();
        if n == 0 {
            return Err(Error::Shape("empty basis".into()));
        }
        if bracket.arity() != 3 || bracket.dim() != n || bracket.field() != field {
            return Err(Error::Shape(format!("bracket must be an {n}^3 tensor over {field}")));
        }
        if pmap.len() != n || pmap.iter().any(|v| v.len() != n || v.iter().any(|c| c.field() != field)) {
            return Err(Error::Shape(format!("p-map must have {n} rows of length {n} over {field}")));
        }
        Ok(PLiePresentation { p, names, bracket, pmap })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> Field {
        Field::Fp(self.p)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self) -> &SparseTensor {
        &self.bracket
    }

    pub fn pmap(&self) -> &[Vec<Scalar>] {
        &self.pmap
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// `[x_i, x_j]` as a dense vector.
    pub fn bracket_of(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.bracket.get(&[i, j, k])).collect()
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (idx, c) in self.bracket.iter() {
            out[idx[2]] += x[idx[0]] * y[idx[1]] * c;
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[i] = self.field().one();
        v
    }

    /// Matrix of `ad(x) = [x, -]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for j in 0..n {
            let col = self.bracket_vec(x, &self.basis_vec(j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    pub fn zero_functional(&self) -> LinearFunctional {
        LinearFunctional(vec![self.field().zero(); self.dim()])
    }
}

/// Antisymmetry, Jacobi, compatibility of the p-map with `ad`, and the
/// PBW certificate: the generator operators on the `p^n` monomials satisfy
/// every defining relation.
pub fn check_plie(l: &PLiePresentation) -> CheckReport {
    let mut report = CheckReport::new("p-Lie");
    let n = l.dim();
    let names = l.names();
    let bad = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|&(i, j)| {
        let a = l.bracket_of(i, j);
        let b = l.bracket_of(j, i);
        if i == j {
            a.iter().any(|c| !c.is_zero())
        } else {
            a.iter().zip(&b).any(|(x, y)| *x != -*y)
        }
    });
    report.record("antisymmetry", bad.map(|(i, j)| witness("[x,y] = -[y,x]", &[i, j], names)));

    let triples = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k])));
    let bad = triples.filter(|t| t[0] < t[1] && t[1] < t[2]).find(|&[i, j, k]| {
        let (x, y, z) = (l.basis_vec(i), l.basis_vec(j), l.basis_vec(k));
        let a = l.bracket_vec(&x, &l.bracket_vec(&y, &z));
        let b = l.bracket_vec(&y, &l.bracket_vec(&z, &x));
        let c = l.bracket_vec(&z, &l.bracket_vec(&x, &y));
        a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(*a + *b + *c).is_zero())
    });
    report.record("jacobi", bad.map(|t| witness("[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0", &t, names)));

    let bad = (0..n).find(|&i| {
        let lhs = l.ad(&l.pmap()[i]);
        let rhs = l.ad(&l.basis_vec(i)).pow(l.p() as u64).expect("square");
        lhs != rhs
    });
    report.record("p-map", bad.map(|i| witness("ad(x^[p]) = ad(x)^p", &[i], names)));

    let mut st = pbw::Straightener::new(l, None);
    match st.relation_failure() {
        Ok(None) => report.pass_with("pbw dimension", format!("dim u = {}", st.dim())),
        Ok(Some((i, j))) => report.fail("pbw dimension", witness("relation on PBW monomials", &[i, j], names)),
        Err(e) => report.fail_with("pbw dimension", e.to_string()),
    }
    report
}

/// True iff the form `(x, y) ↦ ξ([x, y])` is nondegenerate.
pub fn frobenius_check(l: &PLiePresentation, xi: &LinearFunctional) -> bool {
    let n = l.dim();
    if xi.0.len() != n {
        return false;
    }
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| xi.eval(&l.bracket_of(i, j))).collect()).collect();
    Matrix::from_rows(l.field(), &rows).map(|m| m.rank() == n).unwrap_or(false)
}

/// Names accepted by [`catalog`].
pub const CATALOG: &[&str] = &["abelian2", "nonabelian2", "witt", "gl3_parabolic", "torus(n)"];

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn build(
    p: u32,
    names: Vec<String>,
    brackets: &[(usize, usize, usize, i64)],
    pmap: &[(usize, usize, i64)],
) -> Result<PLiePresentation> {
    let f = Field::prime(p as u64)?;
    let n = names.len();
    let mut bracket = SparseTensor::zero(f, 3, n);
    for &(i, j, k, c) in brackets {
        bracket.add_at(&[i, j, k], f.from_i64(c));
        bracket.add_at(&[j, i, k], -f.from_i64(c));
    }
    let mut rows = vec![vec![f.zero(); n]; n];
    for &(i, k, c) in pmap {
        rows[i][k] += f.from_i64(c);
    }
    PLiePresentation::new(p, names, bracket, rows)
}

/// The named p-Lie algebras: `abelian2` (`h, x`, zero bracket and p-map),
/// `nonabelian2` (`[x,y] = y`, `x^[p] = x`, `y^[p] = 0`), `witt`
/// (`[x_i,x_j] = (j-i) x_{i+j}`, `x_0^[p] = x_0`, `p ≥ 3`), `gl3_parabolic`
/// (3x3 matrices with zero last row) and `torus(n)` (`h_i^[p] = h_i`).
pub fn catalog(name: &str, p: u32) -> Result<PLiePresentation> {
    Field::prime(p as u64)?;
    if let Some(n) = name.strip_prefix("torus(").and_then(|r| r.strip_suffix(')')) {
        let n: usize = n.parse().map_err(|_| Error::Input(format!("bad torus rank in {name:?}")))?;
        if n == 0 {
            return Err(Error::Input("torus rank must be positive".into()));
        }
        let list: Vec<String> = (1..=n).map(|i| format!("h{i}")).collect();
        let pmap: Vec<_> = (0..n).map(|i| (i, i, 1)).collect();
        return build(p, list, &[], &pmap);
    }
    match name {
        "abelian2" => build(p, names(&["h", "x"]), &[], &[]),
        "nonabelian2" => build(p, names(&["x", "y"]), &[(0, 1, 1, 1)], &[(0, 0, 1)]),
        "witt" => {
            if p < 3 {
                return Err(Error::Unsupported("the Witt algebra needs p >= 3".into()));
            }
            let n = p as usize;
            let list: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let mut br = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    br.push((i, j, (i + j) % n, j as i64 - i as i64));
                }
            }
            build(p, list, &br, &[(0, 0, 1)])
        }
        "gl3_parabolic" => gl3_parabolic(p),
        _ => Err(Error::Input(format!("unknown p-Lie algebra {name:?}"))),
    }
}

fn gl3_parabolic(p: u32) -> Result<PLiePresentation> {
    let f = Field::prime(p as u64)?;
    let units: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)];
    let list: Vec<String> = units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let n = units.len();
    let index = |r: usize, c: usize| units.iter().position(|&u| u == (r, c));
    let matrix = |k: usize| {
        let mut m = Matrix::zeros(f, 3, 3);
        m[units[k]] = f.one();
        m
    };
    let coords = |m: &Matrix| -> Result<Vec<Scalar>> {
        let mut v = vec![f.zero(); n];
        for r in 0..3 {
            for c in 0..3 {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let k = index(r, c).ok_or_else(|| Error::Consistency("left the parabolic subalgebra".into()))?;
                v[k] = m[(r, c)];
            }
        }
        Ok(v)
    };
    let mut bracket = SparseTensor::zero(f, 3, n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (matrix(i), matrix(j));
            let ab = a.mul(&b)?;
            let ba = b.mul(&a)?;
            let mut comm = Matrix::zeros(f, 3, 3);
            for r in 0..3 {
                for c in 0..3 {
                    comm[(r, c)] = ab[(r, c)] - ba[(r, c)];
                }
            }
            for (k, c) in coords(&comm)?.into_iter().enumerate() {
                bracket.add_at(&[i, j, k], c);
            }
        }
    }
    let pmap = (0..n).map(|i| coords(&matrix(i).pow(p as u64)?)).collect::<Result<Vec<_>>>()?;
    PLiePresentation::new(p, list, bracket, pmap)
}

/// The functional `ξ(E12) = ξ(E23) = 1`, zero on the other basis vectors.
pub fn gl3_frobenius_functional(p: u32) -> Result<LinearFunctional> {
    let f = Field::prime(p as u64)?;
    let mut v = vec![f.zero(); 6];
    v[1] = f.one();
    v[5] = f.one();
    Ok(LinearFunctional(v))
}

/// Wire form: `bracket` entries are `[i, j, k, coeff]`, `pmap` is one dense
/// row per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLieJson {
    pub dim: usize,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub bracket: Vec<[i64; 4]>,
    pub pmap: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<i64>>,
}

impl PLieJson {
    pub fn from_plie(l: &PLiePresentation, xi: Option<&LinearFunctional>) -> Self {
        let res = |c: &Scalar| c.residue().expect("prime field") as i64;
        PLieJson {
            dim: l.dim(),
            p: l.p(),
            basis: Some(l.names().to_vec()),
            bracket: l.bracket().iter().map(|(i, c)| [i[0] as i64, i[1] as i64, i[2] as i64, res(&c)]).collect(),
            pmap: l.pmap().iter().map(|r| r.iter().map(res).collect()).collect(),
            xi: xi.map(|x| x.0.iter().map(res).collect()),
        }
    }

    pub fn to_plie(&self) -> Result<(PLiePresentation, Option<LinearFunctional>)> {
        let f = Field::prime(self.p as u64)?;
        let n = self.dim;
        let list = self.basis.clone().unwrap_or_else(|| (0..n).map(|i| format!("x{i}")).collect());
        if list.len() != n {
            return Err(Error::Input(format!("{} basis names for dim {n}", list.len())));
        }
        let mut bracket = SparseTensor::zero(f, 3, n);
        for e in &self.bracket {
            let idx: Vec<usize> = e[..3].iter().map(|&i| i as usize).collect();
            if e[..3].iter().any(|&i| i < 0 || i as usize >= n) {
                return Err(Error::Input(format!("bracket entry {e:?} outside 0..{n}")));
            }
            bracket.add_at(&idx, f.from_i64(e[3]));
        }
        let pmap: Vec<Vec<Scalar>> = self.pmap.iter().map(|r| r.iter().map(|&c| f.from_i64(c)).collect()).collect();
        let l = PLiePresentation::new(self.p, list, bracket, pmap)?;
        let xi = match &self.xi {
            Some(v) if v.len() == n => Some(LinearFunctional(v.iter().map(|&c| f.from_i64(c)).collect())),
            Some(v) => return Err(Error::Input(format!("xi has length {}, expected {n}", v.len()))),
            None => None,
        };
        Ok((l, xi))
    }
}
