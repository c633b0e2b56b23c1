//! Exact JSON encodings of jets, words, jobs and descriptors.
//!
//! Scalars are strings (`"3/5"`, `"1/2 - sqrt(2)"`), polynomials and series
//! ascending coefficient arrays. A word stores each twist with its
//! certificate; reading it back rechecks the certificate.

use std::fmt::Display;

use serde_json::{json, Map, Value};

use crate::automorphisms::{
    AutWord, Certificate, Generator, SphereTwist, TorusFactor, TorusMoebius, TorusTwist, Witness,
};
use crate::dantesque::{BaseSurface, BlowupRecord, Parent, SurfaceDescriptor};
use crate::error::{Error, Result};
use crate::exactalg::{OrderedField, Poly, Rational, ScalarParser, Scalar, Series, SturmCount};
use crate::surfaces::{
    standard_config, Axis, Chart, Jet, Partition, Point, ProjPoint, SpherePoint, SurfaceKind, TorusPoint, Violation,
};

/// Turns scalar strings into field elements.
pub trait ScalarReader<F> {
    fn read(&mut self, text: &str) -> Result<F>;
}

impl ScalarReader<Scalar> for ScalarParser {
    fn read(&mut self, text: &str) -> Result<Scalar> {
        Ok(self.parse(text)?)
    }
}

/// Reads `n` or `n/d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalReader;

impl ScalarReader<Rational> for RationalReader {
    fn read(&mut self, text: &str) -> Result<Rational> {
        text.trim()
            .parse::<Rational>()
            .map_err(|_| Error::Json(format!("not a rational number: {text:?}")))
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn scalar<F, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<F> {
    reader.read(as_str(v, "scalar")?)
}

fn scalars<F, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Vec<F>> {
    as_array(v, "coefficient list")?
        .iter()
        .map(|c| scalar(c, reader))
        .collect()
}

fn text<F: Display>(x: &F) -> Value {
    Value::String(x.to_string())
}

pub fn poly_to_json<F: OrderedField + Display>(p: &Poly<F>) -> Value {
    Value::Array(p.coeffs().iter().map(text).collect())
}

pub fn poly_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Poly<F>> {
    Ok(Poly::new(scalars(v, reader)?))
}

pub fn surface_from_json(v: &Value) -> Result<SurfaceKind> {
    match as_str(v, "surface")? {
        "torus" => Ok(SurfaceKind::Torus),
        "sphere" => Ok(SurfaceKind::Sphere),
        other => Err(bad(format!("unknown surface {other:?}"))),
    }
}

fn axis_from_json(v: &Value) -> Result<Axis> {
    match as_str(v, "axis")? {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        "z" => Ok(Axis::Z),
        other => Err(bad(format!("unknown axis {other:?}"))),
    }
}

fn point_to_json<F: OrderedField + Display>(p: &Point<F>) -> Value {
    match p {
        Point::Torus(t) => {
            let proj = |q: &ProjPoint<F>| q.affine().map_or(Value::String("inf".into()), text);
            json!([proj(&t.x), proj(&t.y)])
        }
        Point::Sphere(s) => Value::Array(s.coords().iter().map(text).collect()),
    }
}

fn point_from_json<F: OrderedField, R: ScalarReader<F>>(
    surface: SurfaceKind,
    v: &Value,
    reader: &mut R,
) -> Result<Point<F>> {
    let items = as_array(v, "center")?;
    match (surface, items.as_slice()) {
        (SurfaceKind::Torus, [x, y]) => {
            let mut proj = |c: &Value| -> Result<ProjPoint<F>> {
                match as_str(c, "center coordinate")? {
                    "inf" => Ok(ProjPoint::infinity()),
                    s => Ok(ProjPoint::finite(reader.read(s)?)),
                }
            };
            let (x, y) = (proj(x)?, proj(y)?);
            Ok(Point::Torus(TorusPoint::new(x, y)))
        }
        (SurfaceKind::Sphere, [x, y, z]) => {
            let (x, y, z) = (scalar(x, reader)?, scalar(y, reader)?, scalar(z, reader)?);
            Ok(Point::Sphere(SpherePoint::new(x, y, z)?))
        }
        _ => Err(bad(format!("a {surface} center needs {} coordinates", surface_dim(surface)))),
    }
}

fn surface_dim(surface: SurfaceKind) -> usize {
    match surface {
        SurfaceKind::Torus => 2,
        SurfaceKind::Sphere => 3,
    }
}

pub fn jet_to_json<F: OrderedField + Display>(j: &Jet<F>) -> Value {
    let coeffs = |s: &Series<F>| Value::Array(s.coeffs().iter().map(text).collect::<Vec<_>>());
    let (chart, graph) = match j.chart() {
        Chart::Torus { transposed, .. } => (json!({ "transposed": transposed }), json!({ "f": coeffs(&j.graph()[0]) })),
        Chart::Sphere { axis } => (
            json!({ "axis": axis.name() }),
            json!({ "g": coeffs(&j.graph()[0]), "h": coeffs(&j.graph()[1]) }),
        ),
    };
    json!({
        "surface": j.surface().name(),
        "chart": chart,
        "center": point_to_json(j.center()),
        "order": j.order(),
        "graph": graph,
    })
}

/// Reads a jet and brings it to its canonical chart.
///
/// Graph coefficients are in powers of `s − s₀`, where `s` is the chart's
/// graph variable (`1/x` or `1/y` at infinity); missing high coefficients are zero.
pub fn jet_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Jet<F>> {
    let surface = surface_from_json(field(v, "surface")?)?;
    let order = as_usize(field(v, "order")?, "order")?;
    if order == 0 {
        return Err(bad("order must be positive"));
    }
    let center = point_from_json(surface, field(v, "center")?, reader)?;
    let chart_v = v.get("chart").cloned().unwrap_or(json!({}));
    let graph_v = field(v, "graph")?;
    let mut series = |key: &str, s0: &F| -> Result<Series<F>> {
        let cs = scalars(field(graph_v, key)?, reader)?;
        if cs.len() > order {
            return Err(bad(format!("graph {key:?} has more than {order} coefficients")));
        }
        Ok(Series::with_order(s0.clone(), cs, order))
    };
    let (chart, graph) = match &center {
        Point::Torus(t) => {
            let transposed = chart_v.get("transposed").and_then(Value::as_bool).unwrap_or(false);
            let s0 = if transposed { t.y.local() } else { t.x.local() };
            let chart = Chart::Torus {
                transposed,
                x_infinite: t.x.is_infinite(),
                y_infinite: t.y.is_infinite(),
            };
            (chart, vec![series("f", &s0)?])
        }
        Point::Sphere(s) => {
            let axis = chart_v.get("axis").map(axis_from_json).transpose()?.unwrap_or(Axis::X);
            let s0 = s.coords()[axis.index()].clone();
            (Chart::Sphere { axis }, vec![series("g", &s0)?, series("h", &s0)?])
        }
    };
    let raw = Jet::from_parts_unchecked(order, chart, center, graph);
    match raw.validate() {
        Ok(()) => Ok(raw),
        Err(Violation::ChartMismatch) => {
            let canonical = Jet::from_germ(&raw.to_germ())
                .map_err(|e| bad(format!("graph does not define a curvilinear jet: {e}")))?;
            if canonical.center() != raw.center() {
                return Err(bad("graph does not pass through the center"));
            }
            Ok(canonical)
        }
        Err(Violation::CenterMismatch) => Err(bad("graph does not pass through the center")),
        Err(v) => Err(bad(format!("invalid jet: {v:?}"))),
    }
}

pub fn jets_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Vec<Jet<F>>> {
    as_array(v, "jet list")?
        .iter()
        .map(|j| jet_from_json(j, reader))
        .collect()
}

fn certificate_to_json<F: OrderedField + Display>(c: &Certificate<F>) -> Value {
    let witness = match &c.witness {
        Witness::Sturm(s) => json!({
            "kind": "sturm",
            "roots": s.roots,
            "chain_len": s.chain_len,
            "variations": [s.variations.0, s.variations.1],
            "endpoint_roots": s.endpoint_roots,
        }),
        Witness::OnePlusSquare(s) => json!({ "kind": "one_plus_square", "s": poly_to_json(s) }),
        Witness::RotationParameter { cos, sin, a } => json!({
            "kind": "rotation_parameter",
            "cos": text(cos),
            "sin": text(sin),
            "a": poly_to_json(a),
        }),
    };
    json!({
        "region": if c.whole_line { "real_line" } else { "[-1,1]" },
        "witness": witness,
    })
}

/// The stored witness, if it can stand in for a Sturm count.
fn witness_from_json<F: OrderedField, R: ScalarReader<F>>(v: Option<&Value>, reader: &mut R) -> Result<Witness<F>> {
    let Some(w) = v.and_then(|c| c.get("witness")) else {
        return Ok(sturm_placeholder());
    };
    match as_str(field(w, "kind")?, "witness kind")? {
        "sturm" => Ok(sturm_placeholder()),
        "one_plus_square" => Ok(Witness::OnePlusSquare(poly_from_json(field(w, "s")?, reader)?)),
        "rotation_parameter" => Ok(Witness::RotationParameter {
            cos: scalar(field(w, "cos")?, reader)?,
            sin: scalar(field(w, "sin")?, reader)?,
            a: poly_from_json(field(w, "a")?, reader)?,
        }),
        other => Err(bad(format!("unknown witness kind {other:?}"))),
    }
}

fn sturm_placeholder<F>() -> Witness<F> {
    Witness::Sturm(SturmCount {
        roots: 0,
        chain_len: 0,
        variations: (0, 0),
        endpoint_roots: 0,
    })
}

pub fn generator_to_json<F: OrderedField + Display>(g: &Generator<F>) -> Value {
    let mut v = match g {
        Generator::TorusTwist(t) => json!({
            "type": "torus_twist",
            "shear": t.shear().name(),
            "p": poly_to_json(t.p()),
            "q": poly_to_json(t.q()),
            "certificate": certificate_to_json(t.certificate()),
        }),
        Generator::TorusMoebius(m) => {
            let mat = |k: usize| Value::Array(m.matrix(k).iter().map(text).collect());
            json!({ "type": "torus_moebius", "x": mat(0), "y": mat(1) })
        }
        Generator::SphereTwist(s) => json!({
            "type": "sphere_twist",
            "fixed": s.fixed().name(),
            "p": poly_to_json(s.p()),
            "q": poly_to_json(s.q()),
            "r": poly_to_json(s.r()),
            "certificate": certificate_to_json(s.certificate()),
        }),
    };
    v["formula"] = Value::String(g.formula());
    v
}

/// Reads a generator and certifies it again; Sturm witnesses are recounted.
pub fn generator_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Generator<F>> {
    let poly = |key: &str, reader: &mut R| poly_from_json(field(v, key)?, reader);
    match as_str(field(v, "type")?, "generator type")? {
        "torus_twist" => {
            let shear = match as_str(field(v, "shear")?, "shear")? {
                "x" => TorusFactor::X,
                "y" => TorusFactor::Y,
                other => return Err(bad(format!("unknown shear {other:?}"))),
            };
            let (p, q) = (poly("p", reader)?, poly("q", reader)?);
            let witness = witness_from_json(v.get("certificate"), reader)?;
            TorusTwist::with_witness(shear, p, q, witness).map(Generator::TorusTwist)
        }
        "torus_moebius" => {
            let mut mat = |key: &str| -> Result<[F; 4]> {
                scalars(field(v, key)?, reader)?
                    .try_into()
                    .map_err(|_| bad(format!("matrix {key:?} needs 4 entries")))
            };
            let (x, y) = (mat("x")?, mat("y")?);
            TorusMoebius::new(x, y).map(Generator::TorusMoebius)
        }
        "sphere_twist" => {
            let fixed = axis_from_json(field(v, "fixed")?)?;
            let (p, q, r) = (poly("p", reader)?, poly("q", reader)?, poly("r", reader)?);
            let witness = witness_from_json(v.get("certificate"), reader)?;
            SphereTwist::with_witness(fixed, p, q, r, witness).map(Generator::SphereTwist)
        }
        other => Err(bad(format!("unknown generator type {other:?}"))),
    }
}

pub fn word_to_json<F: OrderedField + Display>(w: &AutWord<F>) -> Value {
    json!({
        "surface": w.surface().name(),
        "generators": w.generators().iter().map(generator_to_json).collect::<Vec<_>>(),
    })
}

pub fn word_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<AutWord<F>> {
    let surface = surface_from_json(field(v, "surface")?)?;
    let gens = as_array(field(v, "generators")?, "generators")?
        .iter()
        .map(|g| generator_from_json(g, reader))
        .collect::<Result<Vec<_>>>()?;
    AutWord::new(surface, gens)
}

/// A synthesis request: move `from` (by default the standard jets of the
/// partition) to `jets`, keeping `pinned` fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Job<F> {
    pub surface: SurfaceKind,
    pub partition: Partition,
    pub jets: Vec<Jet<F>>,
    pub pinned: Vec<Jet<F>>,
    pub from: Option<Vec<Jet<F>>>,
}

impl<F: OrderedField> Job<F> {
    pub fn new(surface: SurfaceKind, jets: Vec<Jet<F>>) -> Self {
        Job {
            surface,
            partition: Partition::of_jets(&jets),
            jets,
            pinned: Vec::new(),
            from: None,
        }
    }

    /// `pinned` followed by the moving source jets.
    pub fn source(&self) -> Vec<Jet<F>> {
        let moving = match &self.from {
            Some(from) => from.clone(),
            None => standard_config(self.surface, &self.partition).jets,
        };
        self.pinned.iter().cloned().chain(moving).collect()
    }

    /// `pinned` followed by the target jets.
    pub fn target(&self) -> Vec<Jet<F>> {
        self.pinned.iter().chain(&self.jets).cloned().collect()
    }

    fn check(&self) -> Result<()> {
        let all = self.pinned.iter().chain(&self.jets).chain(self.from.iter().flatten());
        for j in all {
            if j.surface() != self.surface {
                return Err(Error::MixedSurfaces);
            }
        }
        if Partition::of_jets(&self.jets) != self.partition {
            return Err(Error::PreconditionFailed(format!(
                "partition {:?} does not match the jet orders {:?}",
                self.partition.parts(),
                Partition::of_jets(&self.jets).parts()
            )));
        }
        if let Some(from) = &self.from {
            if Partition::of_jets(from) != self.partition {
                return Err(Error::OrderMismatch(
                    Partition::of_jets(from).parts().to_vec(),
                    self.partition.parts().to_vec(),
                ));
            }
        }
        Ok(())
    }
}

pub fn job_to_json<F: OrderedField + Display>(job: &Job<F>) -> Value {
    let list = |js: &[Jet<F>]| js.iter().map(jet_to_json).collect::<Vec<_>>();
    let mut v = json!({
        "surface": job.surface.name(),
        "partition": job.partition.parts(),
        "jets": list(&job.jets),
    });
    if !job.pinned.is_empty() {
        v["pinned"] = Value::Array(list(&job.pinned));
    }
    if let Some(from) = &job.from {
        v["from"] = Value::Array(list(from));
    }
    v
}

/// Reads a job; `partition` defaults to the orders of `jets`.
pub fn job_from_json<F: OrderedField, R: ScalarReader<F>>(v: &Value, reader: &mut R) -> Result<Job<F>> {
    let surface = surface_from_json(field(v, "surface")?)?;
    let jets = jets_from_json(field(v, "jets")?, reader)?;
    let partition = match v.get("partition") {
        Some(p) => {
            let parts = as_array(p, "partition")?
                .iter()
                .map(|e| as_usize(e, "partition part"))
                .collect::<Result<Vec<_>>>()?;
            Partition::new(parts)?
        }
        None => Partition::of_jets(&jets),
    };
    let pinned = match v.get("pinned") {
        Some(p) => jets_from_json(p, reader)?,
        None => Vec::new(),
    };
    let from = v.get("from").map(|f| jets_from_json(f, reader)).transpose()?;
    let job = Job {
        surface,
        partition,
        jets,
        pinned,
        from,
    };
    job.check()?;
    Ok(job)
}

pub fn descriptor_to_json<F: OrderedField + Display>(d: &SurfaceDescriptor<F>) -> Value {
    let records: Vec<Value> = d
        .records
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert(
                "parent".into(),
                match r.parent {
                    Parent::Base => json!("base"),
                    Parent::Record(i) => json!(i),
                },
            );
            m.insert("order".into(), json!(r.order));
            if let Some(c) = &r.center {
                m.insert("center".into(), jet_to_json(c));
            }
            Value::Object(m)
        })
        .collect();
    json!({ "base": d.base.name(), "records": records })
}

pub fn descriptor_from_json<F: OrderedField, R: ScalarReader<F>>(
    v: &Value,
    reader: &mut R,
) -> Result<SurfaceDescriptor<F>> {
    let base = match as_str(field(v, "base")?, "base")? {
        "sphere" => BaseSurface::Sphere,
        "torus" => BaseSurface::Torus,
        "klein" => BaseSurface::Klein,
        other => return Err(bad(format!("unknown base {other:?}"))),
    };
    let records = match v.get("records") {
        Some(rs) => as_array(rs, "records")?
            .iter()
            .map(|r| {
                let parent = match field(r, "parent")? {
                    Value::String(s) if s == "base" => Parent::Base,
                    p => Parent::Record(as_usize(p, "parent")?),
                };
                let order = as_usize(field(r, "order")?, "order")?;
                let center = r.get("center").map(|c| jet_from_json(c, reader)).transpose()?;
                Ok(BlowupRecord { parent, order, center })
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    SurfaceDescriptor::new(base, records)
}
