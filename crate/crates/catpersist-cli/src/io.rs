//! On-disk formats: CSV datasets, versioned JSON diagram files, JSON
//! character tables and plain-text permutation lists. The exact bytes are
//! pinned in docs/formats.md; parse followed by serialize is the identity
//! on canonical files.

use std::fmt;
use std::path::Path;

use catpersist::coloring::{CharacterTable, ConjClass, Irrep};
use catpersist::complex::{GroupAction, MetricData};
use catpersist::field::FieldSpec;
use catpersist::persistence::{Cornerpoint, PersistenceDiagram};
use catpersist::value::{rat_from_f64, rat_to_f64, ExtValue, Rat};
use num::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

/// Distance matrices may disagree across the diagonal by at most this much;
/// the upper triangle wins.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// A problem with an input file. The message carries the file name and,
/// where one makes sense, a line or line:column position.
#[derive(Debug)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err(msg: impl fmt::Display) -> FormatError {
    FormatError(msg.to_string())
}

fn err_at(path: &Path, msg: impl fmt::Display) -> FormatError {
    FormatError(format!("{}: {}", path.display(), msg))
}

// ---------------------------------------------------------------------------
// Diagram files

/// Coefficient field of a stored diagram: a prime written as a JSON number,
/// or the string "Q" for the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDescriptor {
    Prime(u64),
    Rational,
}

impl FieldDescriptor {
    pub fn of(field: FieldSpec) -> FieldDescriptor {
        match field {
            FieldSpec::Gf(p) => FieldDescriptor::Prime(p),
            FieldSpec::Rational => FieldDescriptor::Rational,
        }
    }

    pub fn to_field(self) -> Result<FieldSpec, FormatError> {
        match self {
            FieldDescriptor::Prime(p) => {
                FieldSpec::parse(&p.to_string()).map_err(|e| err(format!("field {p}: {e}")))
            }
            FieldDescriptor::Rational => Ok(FieldSpec::Rational),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldDescriptor::Prime(p) => s.serialize_u64(*p),
            FieldDescriptor::Rational => s.serialize_str("Q"),
        }
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct FieldVisitor;
        impl<'de> Visitor<'de> for FieldVisitor {
            type Value = FieldDescriptor;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a prime as a number, or the string \"Q\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<FieldDescriptor, E> {
                Ok(FieldDescriptor::Prime(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<FieldDescriptor, E> {
                u64::try_from(v)
                    .map(FieldDescriptor::Prime)
                    .map_err(|_| E::custom("field characteristic cannot be negative"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<FieldDescriptor, E> {
                if v == "Q" {
                    Ok(FieldDescriptor::Rational)
                } else {
                    Err(E::custom(format!(
                        "unknown field {v:?}; write a prime number or \"Q\""
                    )))
                }
            }
        }
        d.deserialize_any(FieldVisitor)
    }
}

/// Death coordinate: a finite float, or the string "inf" (JSON has no
/// infinity literal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeathValue {
    Finite(f64),
    Infinite,
}

impl Serialize for DeathValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DeathValue::Finite(x) => s.serialize_f64(*x),
            DeathValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for DeathValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct DeathVisitor;
        impl<'de> Visitor<'de> for DeathVisitor {
            type Value = DeathValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a finite number, or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<DeathValue, E> {
                Ok(DeathValue::Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DeathValue, E> {
                Ok(DeathValue::Finite(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DeathValue, E> {
                Ok(DeathValue::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<DeathValue, E> {
                if v == "inf" {
                    Ok(DeathValue::Infinite)
                } else {
                    Err(E::custom(format!("unknown death {v:?}; write \"inf\"")))
                }
            }
        }
        d.deserialize_any(DeathVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub birth: f64,
    pub death: DeathValue,
    pub multiplicity: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub schema: u32,
    pub field: FieldDescriptor,
    pub degree: usize,
    pub points: Vec<PointRecord>,
}

impl DiagramFile {
    pub fn new(field: FieldSpec, degree: usize, d: &PersistenceDiagram) -> DiagramFile {
        let mut points: Vec<&Cornerpoint> = d.points().iter().collect();
        points.sort();
        DiagramFile {
            schema: SCHEMA_VERSION,
            field: FieldDescriptor::of(field),
            degree,
            points: points
                .into_iter()
                .map(|p| PointRecord {
                    birth: ext_to_f64(&p.birth),
                    death: match &p.death {
                        ExtValue::PosInf => DeathValue::Infinite,
                        other => DeathValue::Finite(ext_to_f64(other)),
                    },
                    multiplicity: p.multiplicity,
                    color: p.color.clone(),
                })
                .collect(),
        }
    }

    /// Rebuild the diagram, floats taken at their exact binary values.
    pub fn to_diagram(&self) -> Result<PersistenceDiagram, FormatError> {
        let exact = |x: f64| rat_from_f64(x).ok_or_else(|| err(format!("{x} is not finite")));
        let mut points = Vec::with_capacity(self.points.len());
        for r in &self.points {
            points.push(Cornerpoint {
                birth: ExtValue::Finite(exact(r.birth)?),
                death: match r.death {
                    DeathValue::Finite(x) => ExtValue::Finite(exact(x)?),
                    DeathValue::Infinite => ExtValue::PosInf,
                },
                color: r.color.clone(),
                multiplicity: r.multiplicity,
            });
        }
        PersistenceDiagram::new(points).map_err(err)
    }

    fn validate(&self) -> Result<(), FormatError> {
        if self.schema != SCHEMA_VERSION {
            return Err(err(format!(
                "unsupported schema {}; this build reads schema {SCHEMA_VERSION}",
                self.schema
            )));
        }
        self.field.to_field()?;
        for (i, p) in self.points.iter().enumerate() {
            if !p.birth.is_finite() {
                return Err(err(format!("point {i}: birth must be finite")));
            }
            if p.multiplicity == 0 {
                return Err(err(format!("point {i}: multiplicity must be at least 1")));
            }
            if let DeathValue::Finite(d) = p.death {
                if !d.is_finite() || p.birth >= d {
                    return Err(err(format!(
                        "point {i}: birth {} must lie strictly below death {}",
                        p.birth, d
                    )));
                }
            }
        }
        Ok(())
    }
}

fn ext_to_f64(v: &ExtValue) -> f64 {
    match v {
        ExtValue::Finite(r) => rat_to_f64(r),
        ExtValue::PosInf => f64::INFINITY,
        ExtValue::NegInf => f64::NEG_INFINITY,
    }
}

pub fn read_diagram_file(path: &Path) -> Result<DiagramFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| err_at(path, e))?;
    let file: DiagramFile = serde_json::from_str(&text)
        .map_err(|e| err(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), e)))?;
    file.validate().map_err(|e| err_at(path, e))?;
    Ok(file)
}

/// Canonical bytes of a diagram file: two-space pretty JSON, struct key
/// order, shortest round-trip floats, one trailing newline.
pub fn render_diagram_file(file: &DiagramFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("diagram files always serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Datasets

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MetricKind {
    /// Rows are point coordinates; distances are Euclidean.
    Euclid,
    /// Rows are a symmetric distance matrix.
    Precomputed,
}

/// Parsed dataset, still in floats. Either a point cloud from a headered
/// CSV (optional "label" column) or a distance matrix (optional leading
/// label row).
#[derive(Debug, Clone)]
pub struct Dataset {
    pub rows: Vec<Vec<f64>>,
    pub labels: Option<Vec<String>>,
    pub kind: MetricKind,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.rows.len()
    }
}

pub fn read_dataset(path: &Path, kind: MetricKind) -> Result<Dataset, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| err_at(path, e))?;
    match kind {
        MetricKind::Euclid => parse_cloud(path, &text),
        MetricKind::Precomputed => parse_matrix(path, &text),
    }
}

fn parse_cloud(path: &Path, text: &str) -> Result<Dataset, FormatError> {
    if text.trim().is_empty() {
        return Ok(Dataset {
            rows: Vec::new(),
            labels: None,
            kind: MetricKind::Euclid,
        });
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| err_at(path, e))?.clone();
    let label_col = headers.iter().position(|h| h == "label");
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| err_at(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let mut coords = Vec::new();
        for (col, fieldtext) in record.iter().enumerate() {
            if Some(col) == label_col {
                labels.push(fieldtext.to_string());
                continue;
            }
            let x: f64 = fieldtext.parse().map_err(|_| {
                err_at(
                    path,
                    format_args!("line {line}: column {} is not a number: {fieldtext:?}", col + 1),
                )
            })?;
            if !x.is_finite() {
                return Err(err_at(path, format_args!("line {line}: non-finite coordinate")));
            }
            coords.push(x);
        }
        rows.push(coords);
    }
    Ok(Dataset {
        rows,
        labels: label_col.map(|_| labels),
        kind: MetricKind::Euclid,
    })
}

fn parse_matrix(path: &Path, text: &str) -> Result<Dataset, FormatError> {
    let mut labels: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(values) => {
                if values.iter().any(|x| !x.is_finite()) {
                    return Err(err_at(path, format_args!("line {line_no}: non-finite distance")));
                }
                rows.push(values);
            }
            Err(_) if rows.is_empty() && labels.is_none() => {
                labels = Some(fields.into_iter().map(str::to_string).collect());
            }
            Err(_) => {
                return Err(err_at(
                    path,
                    format_args!("line {line_no}: expected numbers, got {line:?}"),
                ));
            }
        }
    }
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(err_at(
                path,
                format_args!("matrix is not square: row {} has {} entries, expected {n}", i + 1, row.len()),
            ));
        }
    }
    if let Some(ls) = &labels {
        if ls.len() != n {
            return Err(err_at(
                path,
                format_args!("label row has {} entries, matrix has {n} rows", ls.len()),
            ));
        }
    }
    // Enforce near-symmetry and a near-zero diagonal, then make both exact
    // from the upper triangle.
    for i in 0..n {
        if rows[i][i].abs() > SYMMETRY_TOLERANCE {
            return Err(err_at(path, format_args!("diagonal entry ({i},{i}) is nonzero")));
        }
        rows[i][i] = 0.0;
        for j in (i + 1)..n {
            if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOLERANCE {
                return Err(err_at(
                    path,
                    format_args!("matrix is not symmetric at ({i},{j}) beyond {SYMMETRY_TOLERANCE:e}"),
                ));
            }
            rows[j][i] = rows[i][j];
        }
    }
    Ok(Dataset {
        rows,
        labels,
        kind: MetricKind::Precomputed,
    })
}

/// Exact metric from the parsed floats. Euclidean distances are computed in
/// floats and then frozen at their binary values, so downstream arithmetic
/// is exact even when the true distance is irrational.
pub fn dataset_to_metric(ds: &Dataset) -> Result<MetricData, FormatError> {
    let n = ds.len();
    let mut rows = vec![vec![Rat::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let x = match ds.kind {
                MetricKind::Euclid => {
                    if ds.rows[i].len() != ds.rows[j].len() {
                        return Err(err(format!(
                            "points {i} and {j} have different arities ({} vs {})",
                            ds.rows[i].len(),
                            ds.rows[j].len()
                        )));
                    }
                    let sq: f64 = ds.rows[i]
                        .iter()
                        .zip(&ds.rows[j])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    sq.sqrt()
                }
                MetricKind::Precomputed => ds.rows[i][j],
            };
            let d = rat_from_f64(x)
                .ok_or_else(|| err(format!("distance ({i},{j}) overflows to {x}")))?;
            rows[i][j] = d.clone();
            rows[j][i] = d;
        }
    }
    MetricData::new(rows, ds.labels.clone(), None).map_err(err)
}

/// Largest pairwise distance, the default Vietoris-Rips cutoff.
pub fn max_distance(m: &MetricData) -> Rat {
    let mut best = Rat::from_integer(0.into());
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            if *m.dist(i, j) > best {
                best = m.dist(i, j).clone();
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Character tables and permutation lists

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    order: u64,
    classes: Vec<ClassRecord>,
    irreps: Vec<IrrepRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRecord {
    size: u64,
    rep: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IrrepRecord {
    name: String,
    degree: u64,
    values: Vec<String>,
}

/// "a" or "a/b" with arbitrary-precision integers. Anything else (decimals,
/// square roots) is unsupported: the projector arithmetic is exact rational.
fn parse_rational(s: &str) -> Option<Rat> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn read_character_table(path: &Path) -> Result<CharacterTable, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| err_at(path, e))?;
    let file: TableFile = serde_json::from_str(&text)
        .map_err(|e| err(format!("{}:{}:{}: {}", path.display(), e.line(), e.column(), e)))?;
    let classes = file
        .classes
        .into_iter()
        .map(|c| ConjClass { size: c.size, rep: c.rep })
        .collect();
    let mut irreps = Vec::new();
    for r in file.irreps {
        let mut values = Vec::new();
        for v in &r.values {
            values.push(parse_rational(v).ok_or_else(|| {
                err_at(
                    path,
                    format_args!(
                        "irreducible {:?}: character value {v:?} is not rational; only exact a/b values are supported",
                        r.name
                    ),
                )
            })?);
        }
        irreps.push(Irrep {
            name: r.name,
            degree: r.degree,
            values,
        });
    }
    CharacterTable::new(file.order, classes, irreps).map_err(|e| err_at(path, e))
}

/// One permutation per line: the images of 0..n-1, whitespace separated.
/// The lines must include the identity and be closed under composition;
/// class representatives in a character table refer to line numbers here,
/// counting from 0.
pub fn read_permutations(path: &Path) -> Result<GroupAction, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| err_at(path, e))?;
    let mut perms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let perm: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let perm = perm.map_err(|_| {
            err_at(path, format_args!("line {}: expected a list of vertex indices", i + 1))
        })?;
        perms.push(perm);
    }
    GroupAction::new(perms).map_err(|e| err_at(path, e))
}

// ---------------------------------------------------------------------------
// Number formatting

/// Positional notation with the given number of significant digits,
/// trailing zeros trimmed. Infinities print as "inf" / "-inf".
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn fmt_ext(v: &ExtValue) -> String {
    match v {
        ExtValue::PosInf => "inf".into(),
        ExtValue::NegInf => "-inf".into(),
        ExtValue::Finite(r) => fmt_sig(rat_to_f64(r), 12),
    }
}
