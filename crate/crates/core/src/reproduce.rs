//! Recomputes the reference examples and compares against the fixtures.

use serde::Serialize;
use serde_json::{json, Value};

use crate::code::{Code, CodeSpec};
use crate::counterexample::{build_minor_system, interpolate_low_weight};
use crate::distance::{self, Engine, Limits};
use crate::error::Result;
use crate::experiments::vz_table;
use crate::field::{Fe, PrimeField};
use crate::fixtures::{example1, nonoptimal, table_a, table_b, TableRow};
use crate::matroid::verify_matroid_iso;
use crate::points::PlanePoints;
use crate::recovery::{recover_symbol, ErasurePattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Example,
    TableF31,
    TableF37,
    Counterexample,
    Matroid,
}

impl Target {
    pub const ALL: [Target; 5] =
        [Target::Example, Target::TableF31, Target::TableF37, Target::Counterexample, Target::Matroid];

    pub fn name(self) -> &'static str {
        match self {
            Target::Example => "example",
            Target::TableF31 => "table-f31",
            Target::TableF37 => "table-f37",
            Target::Counterexample => "counterexample",
            Target::Matroid => "matroid",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(target: Target) -> Self {
        Self { target: target.name().into(), pass: true, checks: Vec::new() }
    }

    fn check(&mut self, name: &str, expected: Value, actual: Value) {
        let pass = expected == actual;
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), expected, actual, pass });
    }

    /// One line per failed check.
    pub fn diff(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
            .collect()
    }
}

fn values(v: &[Fe]) -> Vec<u64> {
    v.iter().map(|x| x.0).collect()
}

fn fes(v: &[u64]) -> Vec<Fe> {
    v.iter().map(|&x| Fe(x)).collect()
}

pub fn reproduce(target: Target) -> Result<Report> {
    match target {
        Target::Example => example(),
        Target::TableF31 => table(target, table_a::Q, table_a::R, table_a::points(), &table_a::ROWS),
        Target::TableF37 => table(target, table_b::Q, table_b::R, table_b::points(), &table_b::ROWS),
        Target::Counterexample => counterexample(),
        Target::Matroid => matroid(),
    }
}

fn example() -> Result<Report> {
    let mut rep = Report::new(Target::Example);
    let code = Code::build(example1::spec()?)?;
    let field = code.field();
    rep.check("n", json!(16), json!(code.n()));
    rep.check("k", json!(9), json!(code.k()));
    let word = code.encode(&fes(&example1::POLY))?;
    rep.check("codeword", json!(example1::CODEWORD), json!(word.values()));
    rep.check("zero fibers", json!(example1::ZERO_FIBERS), json!(code.zero_fibers(&word)));
    let witness = distance::weight_witness_with(&code, &example1::ZERO_FIBERS, &fes(&example1::Y_ROOTS))?;
    rep.check("factored polynomial", json!(example1::CODEWORD), json!(witness.values()));
    let erased = ErasurePattern::new(code.n(), [1])?;
    rep.check("recover position 1", json!(25), json!(recover_symbol(&code, &word.0, &erased, 1, 1)?.0));
    let erased = ErasurePattern::new(code.n(), [5])?;
    rep.check("recover position 5", json!(0), json!(recover_symbol(&code, &word.0, &erased, 5, 1)?.0));
    let d = distance::min_distance_infoset(&code)?;
    rep.check("d", json!(example1::D), json!(d.d));
    rep.check("optimal", json!(true), json!(d.optimal));
    debug_assert_eq!(field.order(), example1::Q);
    Ok(rep)
}

fn table(target: Target, q: u64, r: usize, points: PlanePoints, rows: &[TableRow]) -> Result<Report> {
    let mut rep = Report::new(target);
    let field = PrimeField::new(q)?;
    let zs: Vec<usize> = rows.iter().map(|row| row.0).collect();
    let table = vz_table(field, r, &points, zs, Engine::Infoset, &Limits::default())?;
    for (&(z, n, k, d, d_opt), row) in rows.iter().zip(&table.rows) {
        rep.check(&format!("z={z} [n, k, d]"), json!([n, k, d]), json!([row.n, row.k, row.d]));
        rep.check(&format!("z={z} d_opt"), json!(d_opt), json!(row.d_opt));
    }
    Ok(rep)
}

fn counterexample() -> Result<Report> {
    let mut rep = Report::new(Target::Counterexample);
    let field = PrimeField::new(nonoptimal::Q)?;
    let system = build_minor_system(&field, &fes(&nonoptimal::Z_XS), &fes(&nonoptimal::Z_POINT))?;
    rep.check("on Z", json!(true), json!(system.on_z()));
    let code = Code::build(CodeSpec::plane(field, 4, 0, nonoptimal::points()))?;
    let low = interpolate_low_weight(&code, nonoptimal::ZERO_FIBER, &nonoptimal::POSITIONS)?;
    rep.check("g up to scalar", json!(nonoptimal::G), json!(values(&low.g)));
    rep.check("codeword", json!(nonoptimal::CODEWORD), json!(low.codeword.values()));
    rep.check("weight", json!(nonoptimal::WEIGHT), json!(low.codeword.weight()));
    let d = distance::min_distance_structured(&code, Limits::default().node_budget)?;
    rep.check("singleton bound", json!(nonoptimal::SINGLETON), json!(d.singleton_bound));
    rep.check("d at most 6", json!(true), json!(d.d <= nonoptimal::WEIGHT));
    rep.check("optimal", json!(false), json!(d.optimal));
    Ok(rep)
}

fn matroid() -> Result<Report> {
    let mut rep = Report::new(Target::Matroid);
    let code = Code::build(example1::spec()?)?;
    let field = code.field();
    let moved = example1::points().with_xs(&fes(&example1::OTHER_XS));
    let other = Code::build(CodeSpec::plane(field, example1::R, 0, moved))?;
    let iso = verify_matroid_iso(&code, &other)?;
    rep.check("T G R = G'", json!(true), json!(iso.holds));
    let d1 = distance::min_distance_infoset(&code)?.d;
    let d2 = distance::min_distance_infoset(&other)?.d;
    rep.check("d", json!(d1), json!(d2));
    Ok(rep)
}
