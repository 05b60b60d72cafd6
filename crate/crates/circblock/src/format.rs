//! JSON document envelope shared by every command.
//!
//! A document is `{"kind": ..., "payload": ..., "meta": ...}`. Complex numbers
//! are `[re, im]` pairs whose parts are either JSON numbers or exact rational
//! strings such as `"7/2"`. Matrices are row-major nested arrays; circulants
//! are stored by first row.
//!
//! E matrices are stored as `rows[i][j]`, 0-based; `rows[0][0]` is the Perron
//! entry `ε₁₁` and `rows[i][j]` is `ε_{i+1, j+1}`.

use circblock_core::exact::{format_rational, parse_rational, rational_to_f64, GaussianRational, Rational};
use circblock_core::Scalar;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub const TOOL: &str = "circblock";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One real number, either a float or an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Num {
    Float(f64),
    Exact(Rational),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Float(x) => *x,
            Num::Exact(q) => rational_to_f64(q),
        }
    }

    /// Exact value; floats are read through their shortest decimal form.
    pub fn to_rational(&self) -> Result<Rational, circblock_core::Error> {
        match self {
            Num::Float(x) => circblock_core::exact::rational_from_f64(*x),
            Num::Exact(q) => Ok(q.clone()),
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            // -0.0 would otherwise print as "-0.0"
            Num::Float(x) => s.serialize_f64(if *x == 0.0 { 0.0 } else { *x }),
            Num::Exact(q) => s.serialize_str(&format_rational(q)),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => n
                .as_f64()
                .filter(|x| x.is_finite())
                .map(Num::Float)
                .ok_or_else(|| D::Error::custom("number out of range")),
            Value::String(s) => parse_rational(&s).map(Num::Exact).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected a number or rational string, found {other}"))),
        }
    }
}

/// `[re, im]`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Complex(pub Num, pub Num);

impl Complex {
    pub fn to_scalar(&self) -> Scalar {
        Scalar::new(self.0.to_f64(), self.1.to_f64())
    }

    pub fn to_exact(&self) -> Result<GaussianRational, circblock_core::Error> {
        Ok(GaussianRational::new(self.0.to_rational()?, self.1.to_rational()?))
    }

    pub fn is_exact(&self) -> bool {
        matches!((&self.0, &self.1), (Num::Exact(_), Num::Exact(_)))
    }
}

impl From<Scalar> for Complex {
    fn from(z: Scalar) -> Self {
        Complex(Num::Float(z.re), Num::Float(z.im))
    }
}

impl From<&GaussianRational> for Complex {
    fn from(z: &GaussianRational) -> Self {
        Complex(Num::Exact(z.re.clone()), Num::Exact(z.im.clone()))
    }
}

pub type Row = Vec<Complex>;

pub fn scalars(row: &[Complex]) -> Vec<Scalar> {
    row.iter().map(Complex::to_scalar).collect()
}

pub fn complexes(row: &[Scalar]) -> Row {
    row.iter().map(|&z| z.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDoc {
    pub values: Row,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub nonnegative: bool,
    pub min_entry: f64,
    pub max_imag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CirculantDoc {
    pub first_row: Row,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SFamilyDoc {
    /// `matrices[k]` is `S_k`, row-major.
    pub matrices: Vec<Vec<Row>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockMatrixDoc {
    /// `blocks[u][v]` is the first row of block `(u, v)`.
    pub blocks: Vec<Vec<Row>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EMatrixDoc {
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Payload {
    Spectrum(SpectrumDoc),
    Circulant(CirculantDoc),
    SFamily(SFamilyDoc),
    BlockMatrix(BlockMatrixDoc),
    EMatrix(EMatrixDoc),
    /// Free-form object produced by analysis commands.
    Report(serde_json::Map<String, Value>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Spectrum(_) => "spectrum",
            Payload::Circulant(_) => "circulant",
            Payload::SFamily(_) => "s-family",
            Payload::BlockMatrix(_) => "block-matrix",
            Payload::EMatrix(_) => "e-matrix",
            Payload::Report(_) => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub tol: f64,
    #[serde(default)]
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_candidates: Option<usize>,
}

impl Default for Meta {
    fn default() -> Self {
        Meta {
            tool: TOOL.into(),
            version: VERSION.into(),
            tol: circblock_core::DEFAULT_TOL,
            exact: false,
            seed: None,
            max_candidates: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default)]
    pub meta: Meta,
}

impl Document {
    pub fn new(payload: Payload, meta: Meta) -> Self {
        Document { payload, meta }
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Indented JSON with a trailing newline. Short arrays without objects stay
    /// on one line; object keys are sorted; `-0.0` never appears.
    pub fn emit(&self) -> String {
        let mut value = serde_json::to_value(self).expect("documents always serialize");
        normalize_zero(&mut value);
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

const INLINE_WIDTH: usize = 80;

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let compact = serde_json::to_string(v).expect("values always serialize");
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if !items.is_empty() && (has_object(v) || compact.len() > INLINE_WIDTH) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("strings serialize"));
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => write_inline(v, out),
    }
}

fn write_inline(v: &Value, out: &mut String) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(item, out);
            }
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("values always serialize")),
    }
}

fn normalize_zero(v: &mut Value) {
    match v {
        Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => *v = Value::from(0.0),
        Value::Array(items) => items.iter_mut().for_each(normalize_zero),
        Value::Object(map) => map.values_mut().for_each(normalize_zero),
        _ => {}
    }
}
