//! JSON documents and node files. Every number on disk is a string in the
//! canonical text form of its scalar kind.
//!
//! Matrices are stored row-major as nested arrays; entry `[i-1][j-1]` holds
//! `b_ij` (or `c_ij`).

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bd::{BidiagonalFactor, FactorSequence, Orientation, SingularityFreeBD};
use crate::error::{Result, SbdError};
use crate::families::{Family, NodeConfig};
use crate::matrix::Matrix;
use crate::oracle::VerificationReport;
use crate::scalar::{parse_scalar, Scalar, ScalarKind};

pub const SBD_SCHEMA: &str = "sbd/1";
pub const FACTORS_SCHEMA: &str = "factors/1";

/// A number given either as a JSON string (`"1/3"`, `"0.25"`) or as a JSON
/// number, which is read from its decimal text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Text(String),
    Number(serde_json::Number),
}

impl NumberText {
    pub fn parse<T: Scalar>(&self) -> Result<T> {
        match self {
            NumberText::Text(s) => parse_scalar(s),
            NumberText::Number(n) => parse_scalar(&n.to_string()),
        }
    }
}

fn text<T: Scalar>(v: &T) -> NumberText {
    NumberText::Text(v.to_canonical_string())
}

fn default_strict() -> bool {
    true
}

/// On-disk form of a [`NodeConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub nodes: Vec<NumberText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<NumberText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<NumberText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<NumberText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<NumberText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default = "default_strict")]
    pub strict: bool,
}

fn missing(name: &str, family: &str) -> SbdError {
    SbdError::Document(format!("family {family} needs parameter \"{name}\""))
}

impl ConfigDocument {
    pub fn from_config<T: Scalar>(config: &NodeConfig<T>) -> Self {
        let mut doc = ConfigDocument {
            family: config.family.name().to_string(),
            n: Some(config.n()),
            nodes: config.nodes.iter().map(text).collect(),
            q: None,
            h: None,
            weights: None,
            d: None,
            s: None,
            strict: config.strict,
        };
        match &config.family {
            Family::Vandermonde => {}
            Family::QBernstein { q } | Family::Lupas { q } => doc.q = Some(text(q)),
            Family::HBernstein { h } => doc.h = Some(text(h)),
            Family::RationalBernstein { weights } => doc.weights = Some(weights.iter().map(text).collect()),
            Family::CauchyVandermonde { d, multiplicity } => {
                doc.d = Some(text(d));
                doc.s = Some(*multiplicity);
            }
        }
        doc
    }

    /// Parses and validates the configuration in scalar kind `T`.
    pub fn to_config<T: Scalar>(&self) -> Result<NodeConfig<T>> {
        let name = self.family.as_str();
        let need = |v: &Option<NumberText>, p: &str| -> Result<T> {
            v.as_ref().ok_or_else(|| missing(p, name))?.parse()
        };
        let family = match name {
            "vandermonde" => Family::Vandermonde,
            "q_bernstein_vandermonde" => Family::QBernstein { q: need(&self.q, "q")? },
            "h_bernstein_vandermonde" => Family::HBernstein { h: need(&self.h, "h")? },
            "lupas" => Family::Lupas { q: need(&self.q, "q")? },
            "rational_bernstein_vandermonde" => Family::RationalBernstein {
                weights: self
                    .weights
                    .as_ref()
                    .ok_or_else(|| missing("weights", name))?
                    .iter()
                    .map(NumberText::parse)
                    .collect::<Result<_>>()?,
            },
            "cauchy_vandermonde_1pole" => Family::CauchyVandermonde {
                d: need(&self.d, "d")?,
                multiplicity: self.s.ok_or_else(|| missing("s", name))?,
            },
            other => return Err(SbdError::Document(format!("unknown family \"{other}\""))),
        };
        let nodes = self.nodes.iter().map(NumberText::parse).collect::<Result<Vec<T>>>()?;
        if let Some(n) = self.n {
            if n != nodes.len() {
                return Err(SbdError::DimensionMismatch(format!("n = {n} but {} nodes given", nodes.len())));
            }
        }
        NodeConfig::new(family, nodes, self.strict)
    }

    /// The family parameters as a JSON object of canonical strings.
    pub fn params(&self) -> Map<String, Value> {
        let mut map = Map::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        };
        let to_value = |v: &NumberText| serde_json::to_value(v).expect("serializable");
        put("q", self.q.as_ref().map(to_value));
        put("h", self.h.as_ref().map(to_value));
        put(
            "weights",
            self.weights.as_ref().map(|w| Value::Array(w.iter().map(to_value).collect())),
        );
        put("d", self.d.as_ref().map(to_value));
        put("s", self.s.map(Value::from));
        map
    }

    fn from_parts(family: &str, params: &Map<String, Value>, nodes: &[String], strict: bool) -> Result<Self> {
        let mut obj = params.clone();
        obj.insert("family".into(), Value::from(family));
        obj.insert("nodes".into(), Value::from(nodes.to_vec()));
        obj.insert("strict".into(), Value::from(strict));
        serde_json::from_value(Value::Object(obj)).map_err(|e| SbdError::Document(e.to_string()))
    }
}

pub fn parse_config<T: Scalar>(json: &str) -> Result<NodeConfig<T>> {
    let doc: ConfigDocument = serde_json::from_str(json).map_err(|e| SbdError::Document(e.to_string()))?;
    doc.to_config()
}

/// Reads a node file: one scalar per line, blank lines and `#` comments
/// ignored.
pub fn parse_node_file<T: Scalar>(contents: &str) -> Result<Vec<T>> {
    contents
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(parse_scalar)
        .collect()
}

fn scalar_name(kind: ScalarKind) -> String {
    match kind {
        ScalarKind::ExactRational => "rational".into(),
        ScalarKind::Binary64 => "binary64".into(),
        other => other.to_string(),
    }
}

fn check_scalar<T: Scalar>(found: &str) -> Result<()> {
    let want = scalar_name(T::kind());
    if found == want {
        Ok(())
    } else {
        Err(SbdError::Document(format!("document holds {found} values, expected {want}")))
    }
}

fn parse_rows<T: Scalar>(rows: &[Vec<String>]) -> Result<Matrix<T>> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|v| parse_scalar(v)).collect::<Result<Vec<T>>>())
            .collect::<Result<_>>()?,
    )
}

/// A singularity-free decomposition together with the configuration it
/// was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbdDocument {
    pub schema: String,
    pub n: usize,
    pub family: String,
    pub params: Map<String, Value>,
    pub nodes: Vec<String>,
    #[serde(default = "default_strict")]
    pub strict: bool,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    pub scalar: String,
}

impl SbdDocument {
    pub fn new<T: Scalar, U: Scalar>(config: &NodeConfig<U>, sbd: &SingularityFreeBD<T>) -> Self {
        let cfg = ConfigDocument::from_config(config);
        SbdDocument {
            schema: SBD_SCHEMA.into(),
            n: sbd.n(),
            family: cfg.family.clone(),
            params: cfg.params(),
            nodes: config.nodes.iter().map(Scalar::to_canonical_string).collect(),
            strict: config.strict,
            b: sbd.b_matrix().to_canonical_rows(),
            c: sbd.c_matrix().to_canonical_rows(),
            scalar: scalar_name(T::kind()),
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: SbdDocument = serde_json::from_str(json).map_err(|e| SbdError::Document(e.to_string()))?;
        if doc.schema != SBD_SCHEMA {
            return Err(SbdError::Document(format!("unsupported schema \"{}\"", doc.schema)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The decomposition, read in scalar kind `T` (which must match the
    /// document's `scalar` field).
    pub fn decomposition<T: Scalar>(&self) -> Result<SingularityFreeBD<T>> {
        check_scalar::<T>(&self.scalar)?;
        let sbd = SingularityFreeBD::new(parse_rows(&self.b)?, parse_rows(&self.c)?)?;
        if sbd.n() != self.n {
            return Err(SbdError::DimensionMismatch(format!("n = {} but B is {}x{}", self.n, sbd.n(), sbd.n())));
        }
        Ok(sbd)
    }

    /// The configuration recorded alongside the decomposition.
    pub fn config<T: Scalar>(&self) -> Result<NodeConfig<T>> {
        ConfigDocument::from_parts(&self.family, &self.params, &self.nodes, self.strict)?.to_config()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    /// `"L"`, `"D"` or `"U"`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<usize>,
    pub diag: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub offdiag: Vec<String>,
}

/// Explicit bidiagonal factors in product order, used when a decomposition
/// has no `(B, C)` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorsDocument {
    pub schema: String,
    pub n: usize,
    pub family: String,
    pub params: Map<String, Value>,
    pub nodes: Vec<String>,
    #[serde(default = "default_strict")]
    pub strict: bool,
    pub factors: Vec<FactorEntry>,
    pub scalar: String,
}

impl FactorsDocument {
    pub fn new<T: Scalar, U: Scalar>(config: &NodeConfig<U>, fs: &FactorSequence<T>) -> Self {
        let cfg = ConfigDocument::from_config(config);
        let strings = |v: &[T]| v.iter().map(Scalar::to_canonical_string).collect();
        FactorsDocument {
            schema: FACTORS_SCHEMA.into(),
            n: fs.n(),
            family: cfg.family.clone(),
            params: cfg.params(),
            nodes: config.nodes.iter().map(Scalar::to_canonical_string).collect(),
            strict: config.strict,
            factors: fs
                .factors()
                .iter()
                .map(|f| FactorEntry {
                    kind: match f.orientation {
                        Orientation::Lower => "L",
                        Orientation::Diagonal => "D",
                        Orientation::Upper => "U",
                    }
                    .into(),
                    band: f.band,
                    diag: strings(&f.diag),
                    offdiag: strings(&f.offdiag),
                })
                .collect(),
            scalar: scalar_name(T::kind()),
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: FactorsDocument = serde_json::from_str(json).map_err(|e| SbdError::Document(e.to_string()))?;
        if doc.schema != FACTORS_SCHEMA {
            return Err(SbdError::Document(format!("unsupported schema \"{}\"", doc.schema)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn factor_sequence<T: Scalar>(&self) -> Result<FactorSequence<T>> {
        check_scalar::<T>(&self.scalar)?;
        let parse = |v: &[String]| v.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<T>>>();
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let orientation = match f.kind.as_str() {
                    "L" => Orientation::Lower,
                    "D" => Orientation::Diagonal,
                    "U" => Orientation::Upper,
                    other => return Err(SbdError::Document(format!("unknown factor kind \"{other}\""))),
                };
                Ok(BidiagonalFactor {
                    orientation,
                    diag: parse(&f.diag)?,
                    offdiag: parse(&f.offdiag)?,
                    band: f.band,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fs = FactorSequence::from_product_order(factors)?;
        if fs.n() != self.n {
            return Err(SbdError::DimensionMismatch(format!("n = {} but factors have order {}", self.n, fs.n())));
        }
        Ok(fs)
    }

    pub fn config<T: Scalar>(&self) -> Result<NodeConfig<T>> {
        ConfigDocument::from_parts(&self.family, &self.params, &self.nodes, self.strict)?.to_config()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstDocument {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "in")]
    pub part: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    #[serde(rename = "max_rel_error_B")]
    pub max_rel_error_b: String,
    #[serde(rename = "max_rel_error_C")]
    pub max_rel_error_c: String,
    pub worst: WorstDocument,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<&VerificationReport> for ReportDocument {
    fn from(r: &VerificationReport) -> Self {
        ReportDocument {
            max_rel_error_b: r.max_rel_error_b.to_string(),
            max_rel_error_c: r.max_rel_error_c.to_string(),
            worst: WorstDocument {
                i: r.worst.i,
                j: r.worst.j,
                part: r.worst.part.to_string(),
            },
            n: r.n,
            seed: r.seed,
        }
    }
}
