//! JSON artifacts: complexes, pants objects, quintuples, inertia objects,
//! sample descriptors and reports.
//!
//! Every document serializes with a fixed field order and a trailing
//! newline, so `save(load(f)) == f` for canonical files.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use schober_core::homalg::{cone, skyscraper, ChainMap, FreeComplex, HomalgError, PolyMatrix};
use schober_core::laurent::parse_rational;
use schober_core::moduli::InertiaPoint;
use schober_core::report::Report;
use schober_core::schober::{PantsObject, SampleObject, TwistedComplex};
use schober_core::sections::{CylinderSchober, InertiaObject, Iso, MutatedQuintuple, Quintuple};
use schober_core::{LaurentPoly, Rational, TorusPoint};

/// A load failure. `Schema` carries the JSON path of the offending value;
/// `Invalid` means the document parsed but its data is not a valid object.
#[derive(Debug)]
pub enum IoError {
    Read(String),
    Schema { path: String, message: String },
    Invalid(Report),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Read(m) => write!(f, "{}", m),
            IoError::Schema { path, message } => write!(f, "at {}: {}", path, message),
            IoError::Invalid(r) => write!(f, "{}", r),
        }
    }
}

impl std::error::Error for IoError {}

fn schema(path: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

fn invalid(name: &str, witness: impl ToString) -> IoError {
    let mut r = Report::new();
    r.check(name, false, witness);
    IoError::Invalid(r)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path.is_empty() { ".".into() } else { path }, e.into_inner())
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_file(path: &str) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read(format!("cannot read {}: {}", path, e)))
}

/// A matrix at one degree, entries in the Laurent grammar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub degree: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub num_vars: usize,
    pub min_deg: i64,
    pub ranks: Vec<usize>,
    /// `d^k: C^k -> C^{k+1}`; omitted degrees are zero.
    pub differentials: Vec<MatrixJson>,
    #[serde(default)]
    pub support_hints: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedJson {
    pub complex: ComplexJson,
    #[serde(default)]
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsJson {
    pub complex: ComplexJson,
    /// `h^k: C^k -> C^{k-1}`.
    pub homotopy: Vec<MatrixJson>,
    #[serde(default)]
    pub twist: i64,
}

/// Torus objects by class constructor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectSpec {
    Zero,
    Skyscraper {
        point: Vec<String>,
    },
    StructureObject,
    /// Cone of multiplication by `map` on `of`.
    ConeOf {
        map: String,
        of: Box<ObjectSpec>,
    },
    Complex {
        complex: ComplexJson,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InertiaJson {
    pub object: ObjectSpec,
    #[serde(default)]
    pub twist: i64,
    pub automorphism: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum QuintupleJson {
    Chekanov {
        inertia: InertiaJson,
    },
    Counit {
        object: ObjectSpec,
        #[serde(default)]
        twist: i64,
    },
    Clifford {
        inertia: InertiaJson,
    },
    /// `(X, Y2, p, m)` with `Y1 = Cone(p)`.
    Quintuple {
        x: PantsJson,
        y2: TwistedJson,
        p: Vec<MatrixJson>,
        m_fwd: Vec<MatrixJson>,
        m_bwd: Vec<MatrixJson>,
    },
    /// `(X♯, Y1♯, i♯, m♯)` with `Y2♯ = Cone(i♯)`.
    Mutated {
        x: PantsJson,
        y1: TwistedJson,
        i: Vec<MatrixJson>,
        m_fwd: Vec<MatrixJson>,
        m_bwd: Vec<MatrixJson>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchoberJson {
    pub n: usize,
    pub framing_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SampleJson {
    Zero,
    StructureObject,
    Skyscraper { point: Vec<String> },
    PantsSkyscraper { point: Vec<String> },
    PantsStructureObject,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesJson {
    pub schober: SchoberJson,
    pub samples: Vec<SampleJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub pass: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        ReportJson {
            pass: r.passed(),
            checks: r
                .lines
                .iter()
                .map(|l| CheckJson {
                    name: l.name.clone(),
                    pass: l.pass,
                    witness: l.witness.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub point: Vec<String>,
    pub lambda: String,
}

impl From<&InertiaPoint> for PointJson {
    fn from(ip: &InertiaPoint) -> Self {
        PointJson {
            point: rationals_to_json(ip.point.coords()),
            lambda: ip.lambda.to_string(),
        }
    }
}

pub fn rationals_to_json(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn parse_point(coords: &[String], path: &str) -> Result<TorusPoint, IoError> {
    let v = coords
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| schema(format!("{}[{}]", path, i), e)))
        .collect::<Result<Vec<_>, _>>()?;
    TorusPoint::new(v).map_err(|e| schema(path, e))
}

fn check_point_vars(p: &TorusPoint, nv: usize, path: &str) -> Result<(), IoError> {
    if p.num_vars() != nv {
        return Err(schema(
            path,
            format!("expected {} coordinates, found {}", nv, p.num_vars()),
        ));
    }
    Ok(())
}

fn matrix_to_json(degree: i64, m: &PolyMatrix) -> MatrixJson {
    let matrix = (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect();
    MatrixJson { degree, matrix }
}

fn parse_matrix(m: &MatrixJson, nv: usize, shape: (usize, usize), path: &str) -> Result<PolyMatrix, IoError> {
    let (r, c) = shape;
    if m.matrix.len() != r || m.matrix.iter().any(|row| row.len() != c) {
        let got_cols = m.matrix.first().map_or(0, Vec::len);
        return Err(schema(
            format!("{}.matrix", path),
            format!(
                "expected a {}x{} matrix at degree {}, found {}x{}",
                r,
                c,
                m.degree,
                m.matrix.len(),
                got_cols
            ),
        ));
    }
    let mut out = PolyMatrix::zeros(nv, r, c);
    for (i, row) in m.matrix.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let p = LaurentPoly::parse(e, nv).map_err(|err| schema(format!("{}.matrix[{}][{}]", path, i, j), err))?;
            out.set(i, j, p);
        }
    }
    Ok(out)
}

/// Degree-indexed matrices, shapes given by `shape(k)`.
fn parse_graded(
    ms: &[MatrixJson],
    nv: usize,
    shape: impl Fn(i64) -> (usize, usize),
    path: &str,
) -> Result<BTreeMap<i64, PolyMatrix>, IoError> {
    let mut out = BTreeMap::new();
    for (idx, m) in ms.iter().enumerate() {
        let p = format!("{}[{}]", path, idx);
        if out.contains_key(&m.degree) {
            return Err(schema(
                format!("{}.degree", p),
                format!("duplicate degree {}", m.degree),
            ));
        }
        out.insert(m.degree, parse_matrix(m, nv, shape(m.degree), &p)?);
    }
    Ok(out)
}

fn graded_to_json(c_deg: impl Iterator<Item = i64>, get: impl Fn(i64) -> PolyMatrix) -> Vec<MatrixJson> {
    c_deg
        .filter_map(|k| {
            let m = get(k);
            (m.rows() > 0 && m.cols() > 0).then(|| matrix_to_json(k, &m))
        })
        .collect()
}

fn span(a: &FreeComplex, b: &FreeComplex) -> std::ops::RangeInclusive<i64> {
    let lo = a.min_deg().min(b.min_deg()) - 1;
    let hi = a.max_deg().max(b.max_deg()) + 1;
    lo..=hi
}

pub fn complex_to_json(c: &FreeComplex) -> ComplexJson {
    ComplexJson {
        num_vars: c.num_vars(),
        min_deg: c.min_deg(),
        ranks: c.ranks().to_vec(),
        differentials: graded_to_json(c.degrees(), |k| c.diff(k)),
        support_hints: c
            .support_hints()
            .iter()
            .map(|p| rationals_to_json(p.coords()))
            .collect(),
    }
}

pub fn complex_from_json(j: &ComplexJson, path: &str) -> Result<FreeComplex, IoError> {
    let nv = j.num_vars;
    let rank = |k: i64| {
        if k < j.min_deg {
            0
        } else {
            j.ranks.get((k - j.min_deg) as usize).copied().unwrap_or(0)
        }
    };
    let diffs = parse_graded(
        &j.differentials,
        nv,
        |k| (rank(k + 1), rank(k)),
        &format!("{}.differentials", path),
    )?;
    let mut hints = Vec::new();
    for (i, h) in j.support_hints.iter().enumerate() {
        let p = parse_point(h, &format!("{}.support_hints[{}]", path, i))?;
        check_point_vars(&p, nv, &format!("{}.support_hints[{}]", path, i))?;
        hints.push(p);
    }
    let n = j.ranks.len();
    let ds = (0..n.saturating_sub(1))
        .map(|i| {
            let k = j.min_deg + i as i64;
            diffs
                .get(&k)
                .cloned()
                .unwrap_or_else(|| PolyMatrix::zeros(nv, rank(k + 1), rank(k)))
        })
        .collect();
    FreeComplex::new(nv, j.min_deg, j.ranks.clone(), ds, hints).map_err(|e| match e {
        HomalgError::NotAComplex { .. } => invalid("d2", format!("{}: {}", path, e)),
        other => schema(path, other),
    })
}

fn twisted_to_json(t: &TwistedComplex) -> TwistedJson {
    TwistedJson {
        complex: complex_to_json(&t.complex),
        twist: t.twist,
    }
}

fn twisted_from_json(j: &TwistedJson, path: &str) -> Result<TwistedComplex, IoError> {
    Ok(TwistedComplex::new(
        complex_from_json(&j.complex, &format!("{}.complex", path))?,
        j.twist,
    ))
}

pub fn pants_to_json(x: &PantsObject) -> PantsJson {
    let c = x.complex();
    PantsJson {
        complex: complex_to_json(c),
        homotopy: graded_to_json(c.degrees(), |k| x.homotopy_at(k)),
        twist: x.twist(),
    }
}

pub fn pants_from_json(j: &PantsJson, path: &str) -> Result<PantsObject, IoError> {
    let c = complex_from_json(&j.complex, &format!("{}.complex", path))?;
    let h = parse_graded(
        &j.homotopy,
        c.num_vars(),
        |k| (c.rank(k - 1), c.rank(k)),
        &format!("{}.homotopy", path),
    )?;
    let x = PantsObject::new(c, h).map_err(|e| invalid("pants", format!("{}: {}", path, e)))?;
    Ok(x.with_twist(j.twist))
}

fn map_to_json(f: &ChainMap) -> Vec<MatrixJson> {
    graded_to_json(span(f.source(), f.target()), |k| f.component(k))
}

fn map_from_json(ms: &[MatrixJson], s: &FreeComplex, t: &FreeComplex, path: &str) -> Result<ChainMap, IoError> {
    let comps = parse_graded(ms, s.num_vars(), |k| (t.rank(k), s.rank(k)), path)?;
    ChainMap::new(s, t, comps).map_err(|e| match e {
        HomalgError::NotAChainMap { .. } => invalid("chain-map", format!("{}: {}", path, e)),
        other => schema(path, other),
    })
}

/// Resolve a torus-object descriptor in `nv` variables.
pub fn object_from_spec(spec: &ObjectSpec, nv: usize, path: &str) -> Result<FreeComplex, IoError> {
    Ok(match spec {
        ObjectSpec::Zero => FreeComplex::zero(nv),
        ObjectSpec::StructureObject => FreeComplex::structure_sheaf(nv),
        ObjectSpec::Skyscraper { point } => {
            let p = parse_point(point, &format!("{}.point", path))?;
            check_point_vars(&p, nv, &format!("{}.point", path))?;
            skyscraper(&p)
        }
        ObjectSpec::ConeOf { map, of } => {
            let c = object_from_spec(of, nv, &format!("{}.of", path))?;
            let f = LaurentPoly::parse(map, nv).map_err(|e| schema(format!("{}.map", path), e))?;
            cone(&ChainMap::scalar(&c, &f)).complex
        }
        ObjectSpec::Complex { complex } => {
            let c = complex_from_json(complex, &format!("{}.complex", path))?;
            if c.num_vars() != nv {
                return Err(schema(format!("{}.complex.num_vars", path), format!("expected {}", nv)));
            }
            c
        }
    })
}

pub fn inertia_from_json(j: &InertiaJson, nv: usize, path: &str) -> Result<InertiaObject, IoError> {
    let y = object_from_spec(&j.object, nv, &format!("{}.object", path))?;
    let m = LaurentPoly::parse(&j.automorphism, nv).map_err(|e| schema(format!("{}.automorphism", path), e))?;
    Ok(InertiaObject {
        y: TwistedComplex::new(y, j.twist),
        m,
    })
}

/// A loaded quintuple of either kind.
#[derive(Clone, Debug)]
pub enum AnyQuintuple {
    Ordinary(Quintuple),
    Mutated(MutatedQuintuple),
}

fn section_err(e: impl ToString, path: &str) -> IoError {
    invalid("construct", format!("{}: {}", path, e.to_string()))
}

pub fn quintuple_from_json(j: &QuintupleJson, cyl: &CylinderSchober) -> Result<AnyQuintuple, IoError> {
    let nv = cyl.schober().num_vars();
    Ok(match j {
        QuintupleJson::Chekanov { inertia } => {
            let obj = inertia_from_json(inertia, nv, ".inertia")?;
            AnyQuintuple::Ordinary(cyl.chekanov(&obj).map_err(|e| section_err(e, "."))?)
        }
        QuintupleJson::Clifford { inertia } => {
            let obj = inertia_from_json(inertia, nv, ".inertia")?;
            AnyQuintuple::Mutated(cyl.clifford(&obj).map_err(|e| section_err(e, "."))?)
        }
        QuintupleJson::Counit { object, twist } => {
            let y = object_from_spec(object, nv, ".object")?;
            let q = cyl
                .counit_quintuple(&TwistedComplex::new(y, *twist))
                .map_err(|e| section_err(e, "."))?;
            AnyQuintuple::Ordinary(q)
        }
        QuintupleJson::Quintuple { x, y2, p, m_fwd, m_bwd } => {
            let x = pants_from_json(x, ".x")?;
            let y2 = twisted_from_json(y2, ".y2")?;
            check_vars(x.complex(), nv, ".x")?;
            check_vars(&y2.complex, nv, ".y2")?;
            let p = map_from_json(p, x.complex(), &y2.complex, ".p")?;
            let y1 = cone(&p).complex;
            let fwd = map_from_json(m_fwd, &y1, &y2.complex, ".m_fwd")?;
            let bwd = map_from_json(m_bwd, &y2.complex, &y1, ".m_bwd")?;
            AnyQuintuple::Ordinary(Quintuple {
                x,
                y2,
                p,
                m: Iso { fwd, bwd },
            })
        }
        QuintupleJson::Mutated { x, y1, i, m_fwd, m_bwd } => {
            let x = pants_from_json(x, ".x")?;
            let y1 = twisted_from_json(y1, ".y1")?;
            check_vars(x.complex(), nv, ".x")?;
            check_vars(&y1.complex, nv, ".y1")?;
            let i = map_from_json(i, &y1.complex.shift(-1), x.complex(), ".i")?;
            let y2 = cone(&i).complex;
            let fwd = map_from_json(m_fwd, &y1.complex, &y2, ".m_fwd")?;
            let bwd = map_from_json(m_bwd, &y2, &y1.complex, ".m_bwd")?;
            AnyQuintuple::Mutated(MutatedQuintuple {
                x,
                y1,
                i,
                m: Iso { fwd, bwd },
            })
        }
    })
}

fn check_vars(c: &FreeComplex, nv: usize, path: &str) -> Result<(), IoError> {
    if c.num_vars() != nv {
        return Err(schema(
            format!("{}.complex.num_vars", path),
            format!("expected {}, found {}", nv, c.num_vars()),
        ));
    }
    Ok(())
}

pub fn quintuple_to_json(q: &AnyQuintuple) -> QuintupleJson {
    match q {
        AnyQuintuple::Ordinary(q) => QuintupleJson::Quintuple {
            x: pants_to_json(&q.x),
            y2: twisted_to_json(&q.y2),
            p: map_to_json(&q.p),
            m_fwd: map_to_json(&q.m.fwd),
            m_bwd: map_to_json(&q.m.bwd),
        },
        AnyQuintuple::Mutated(q) => QuintupleJson::Mutated {
            x: pants_to_json(&q.x),
            y1: twisted_to_json(&q.y1),
            i: map_to_json(&q.i),
            m_fwd: map_to_json(&q.m.fwd),
            m_bwd: map_to_json(&q.m.bwd),
        },
    }
}

pub fn sample_from_json(s: &SampleJson, nv: usize, path: &str) -> Result<SampleObject, IoError> {
    let pt = |point: &[String]| -> Result<TorusPoint, IoError> {
        let p = parse_point(point, &format!("{}.point", path))?;
        check_point_vars(&p, nv, &format!("{}.point", path))?;
        Ok(p)
    };
    Ok(match s {
        SampleJson::Zero => SampleObject::Zero,
        SampleJson::StructureObject => SampleObject::Structure,
        SampleJson::PantsStructureObject => SampleObject::PantsStructure,
        SampleJson::Skyscraper { point } => SampleObject::Skyscraper(pt(point)?),
        SampleJson::PantsSkyscraper { point } => SampleObject::PantsSkyscraper(pt(point)?),
    })
}

/// Round-trip a canonical document: parse and re-emit.
pub fn canonicalize<T: DeserializeOwned + Serialize>(text: &str) -> Result<String, IoError> {
    Ok(to_json(&from_json::<T>(text)?))
}
