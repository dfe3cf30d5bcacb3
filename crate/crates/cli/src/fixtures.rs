//! Named fixtures, read from `data/fixtures.json`, and the targets they build.

use std::path::Path;

use hopfkit_core::commutative::{
    alpha_p, functions, group_algebra, heisenberg_twist, mu_n, mu_n_group_algebra, CommutativePair, GroupTable,
};
use hopfkit_core::fixtures::{abelianres, frobenius_gl3, two_dim, witt};
use hopfkit_core::hopf::{tensor_from_json, HopfJson, TensorJson};
use hopfkit_core::isocat::{FormSpec, NormalAbelianEmbedding, PipelineJson};
use hopfkit_core::plie::{catalog, enveloping};
use hopfkit_core::{Field, HopfPresentation, SparseTensor};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

const DATA: &str = include_str!("../data/fixtures.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expectation {
    pub check: String,
    pub value: Value,
    /// `example`, `derived` or `trivial`.
    pub source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub section: String,
    pub family: String,
    pub summary: String,
    pub build: Value,
    pub expect: Vec<Expectation>,
}

#[derive(Deserialize)]
struct DataFile {
    fixtures: Vec<Fixture>,
}

pub fn all() -> Vec<Fixture> {
    serde_json::from_str::<DataFile>(DATA).expect("fixtures.json is well formed").fixtures
}

pub fn find(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// What a fixture or input file resolves to.
pub enum Subject {
    Hopf(HopfPresentation),
    Twisted { parent: HopfPresentation, twist: SparseTensor },
    Reduced(hopfkit_core::fixtures::FrobeniusExample),
    Enumerate(HopfPresentation),
    Pipeline(PipelineJson),
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    match s.split_once(':') {
        None if s == "Q" => Ok(Field::Q),
        Some(("Fp", p)) => {
            let p: u64 = p.parse().map_err(|_| CliError::input(format!("bad prime in field {s:?}")))?;
            Ok(Field::prime(p)?)
        }
        _ => Err(CliError::input(format!("field must be Fp:<p> or Q, got {s:?}"))),
    }
}

pub fn parse_group(s: &str) -> Result<GroupTable, CliError> {
    let n = |t: &str| t.parse::<usize>().map_err(|_| CliError::input(format!("unknown group {s:?}")));
    Ok(match s {
        "trivial" => GroupTable::trivial(),
        "klein4" => GroupTable::klein4(),
        "Q8" => GroupTable::quaternion(),
        _ if s.starts_with("Z/") => GroupTable::cyclic(n(&s[2..])?),
        _ if s.starts_with('D') => GroupTable::dihedral(n(&s[1..])?),
        _ if s.starts_with('S') => GroupTable::symmetric(n(&s[1..])?),
        _ => return Err(CliError::input(format!("unknown group {s:?}"))),
    })
}

/// `group:<G>`, `fun:<G>`, `mu:<n>` (`O(μ_n)`), `kmu:<n>` (`k[μ_n]`) or `alpha`, over `field`.
pub fn generic_hopf(name: &str, field: Field) -> Result<Option<HopfPresentation>, CliError> {
    Ok(match name.split_once(':') {
        Some(("group", g)) => Some(group_algebra(&parse_group(g)?, field)),
        Some(("fun", g)) => Some(functions(&parse_group(g)?, field)),
        Some(("mu", n)) => Some(mu_n(order(n)?, field)),
        Some(("kmu", n)) => Some(mu_n_group_algebra(order(n)?, field)),
        None if name == "alpha" => Some(alpha_p(field)?),
        _ => None,
    })
}

fn order(n: &str) -> Result<usize, CliError> {
    n.parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::input(format!("bad order {n:?}")))
}

fn str_field<'a>(build: &'a Value, key: &str) -> Result<&'a str, CliError> {
    build[key].as_str().ok_or_else(|| CliError::input(format!("fixture build lacks {key:?}")))
}

fn u32_field(build: &Value, key: &str) -> Result<u32, CliError> {
    build[key].as_u64().map(|v| v as u32).ok_or_else(|| CliError::input(format!("fixture build lacks {key:?}")))
}

fn usizes(build: &Value, key: &str) -> Option<Vec<usize>> {
    build[key].as_array().map(|a| a.iter().filter_map(|v| v.as_u64().map(|x| x as usize)).collect())
}

impl Fixture {
    pub fn subject(&self) -> Result<Subject, CliError> {
        let b = &self.build;
        let twisted =
            |ex: hopfkit_core::fixtures::TwistedExample| Subject::Twisted { parent: ex.parent, twist: ex.twist };
        Ok(match str_field(b, "kind")? {
            "abelianres" => twisted(abelianres(u32_field(b, "p")?)?),
            "two-dim" => twisted(two_dim(u32_field(b, "p")?)?),
            "witt" => twisted(witt(u32_field(b, "p")?, u32_field(b, "i")?)?.full),
            "unit-twist" => {
                let parent = enveloping(&catalog(str_field(b, "lie")?, u32_field(b, "p")?)?)?;
                let twist = parent.algebra().unit_tensor(2);
                Subject::Twisted { parent, twist }
            }
            "frobenius-gl3" => Subject::Reduced(frobenius_gl3(u32_field(b, "p")?)?),
            "heisenberg" => {
                let field = parse_field(str_field(b, "field")?)?;
                let scheme = str_field(b, "scheme")?;
                let pair = if scheme.starts_with("alpha") {
                    CommutativePair::new(alpha_p(field)?, scheme)?
                } else {
                    CommutativePair::constant(&parse_group(scheme)?, field)?
                };
                let (parent, twist) = heisenberg_twist(&pair)?;
                Subject::Twisted { parent, twist }
            }
            "enumerate" => {
                let field = parse_field(str_field(b, "field")?)?;
                let name = str_field(b, "hopf")?;
                Subject::Enumerate(
                    generic_hopf(name, field)?
                        .ok_or_else(|| CliError::input(format!("unknown Hopf target {name:?}")))?,
                )
            }
            "isocat" => {
                let field = parse_field(str_field(b, "field")?)?;
                let g = parse_group(str_field(b, "group")?)?;
                let sub = usizes(b, "subgroup").unwrap_or_default();
                let e = NormalAbelianEmbedding::new(field, g, &sub)?;
                let mut input = PipelineJson::new(&e, FormSpec::Named(str_field(b, "form")?.into()));
                input.shift = usizes(b, "shift");
                Subject::Pipeline(input)
            }
            other => return Err(CliError::input(format!("unknown fixture kind {other:?}"))),
        })
    }
}

#[derive(Deserialize)]
struct TwistFile {
    hopf: HopfJson,
    twist: TensorJson,
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// A Hopf presentation file, a `{hopf, twist}` file or an isocat pipeline file.
pub fn subject_from_file(path: &Path) -> Result<Subject, CliError> {
    let v = read_json(path)?;
    let bad = |e: serde_json::Error| CliError::input(format!("{}: {e}", path.display()));
    if v.get("mult").is_some() {
        Ok(Subject::Hopf(serde_json::from_value::<HopfJson>(v).map_err(bad)?.to_hopf()?))
    } else if v.get("twist").is_some() {
        let t: TwistFile = serde_json::from_value(v).map_err(bad)?;
        let parent = t.hopf.to_hopf()?;
        let twist = tensor_from_json(&parent, &t.twist)?;
        Ok(Subject::Twisted { parent, twist })
    } else if v.get("subgroup").is_some() {
        Ok(Subject::Pipeline(serde_json::from_value(v).map_err(bad)?))
    } else {
        Err(CliError::input(format!("{}: not a Hopf, twist or pipeline file", path.display())))
    }
}

/// A fixture name or a file path.
pub fn resolve(target: &str) -> Result<(Subject, Vec<Expectation>), CliError> {
    if let Some(f) = find(target) {
        return Ok((f.subject()?, f.expect));
    }
    let path = Path::new(target);
    if path.exists() {
        return Ok((subject_from_file(path)?, Vec::new()));
    }
    Err(CliError::input(format!("{target:?} is neither a fixture nor a file")))
}

/// The Hopf algebra a target names: a generic name, a fixture or a file.
pub fn resolve_hopf(target: &str, field: Option<Field>) -> Result<HopfPresentation, CliError> {
    if let Some(h) = generic_hopf(target, field.unwrap_or(Field::Fp(2)))? {
        return Ok(h);
    }
    let h = match resolve(target)?.0 {
        Subject::Hopf(h) | Subject::Enumerate(h) | Subject::Twisted { parent: h, .. } => h,
        _ => return Err(CliError::input(format!("{target:?} does not name a Hopf algebra"))),
    };
    match field {
        Some(f) if f != h.field() => Err(CliError::input(format!("{target:?} is over {}, not {f}", h.field()))),
        _ => Ok(h),
    }
}
