//! Cross-route verification: every coloring count is computed by the closed
//! formula, the block engine and the Fox oracle, and the results must agree.

use rayon::prelude::*;
use serde::Serialize;

use crate::dihedral::Sign;
use crate::engine::{coloring_count_formula_unchecked, order, Engine};
use crate::error::Result;
use crate::fox::count_colorings;
use crate::tangle::{closure_trace, montesinos_word, MontesinosSpec, PlanarDiagram, TangleWord};

/// Odd orders `3, 5, …, 15`.
pub const DEFAULT_ORDERS: [u32; 7] = [3, 5, 7, 9, 11, 13, 15];

/// Rational fractions first, then pretzels, then mixed Montesinos lists.
pub fn builtin_corpus() -> Vec<MontesinosSpec> {
    [
        "1/3", "-1/3", "2/5", "-2/5", "3/7", "5/2", "7/2", "3/1", //
        "3,3,3", "-2,3,5", "3,5,7", "5,5,5", //
        "1/3,1/3", "2/5,3/7",
    ]
    .iter()
    .map(|s| s.parse().expect("corpus entry"))
    .collect()
}

/// What a coloring count is computed from.
#[derive(Clone, Debug)]
pub enum Input {
    Montesinos(MontesinosSpec),
    Word(TangleWord),
    Diagram(PlanarDiagram),
}

impl Input {
    pub fn word(&self) -> Option<TangleWord> {
        match self {
            Input::Montesinos(s) => Some(montesinos_word(s)),
            Input::Word(w) => Some(w.clone()),
            Input::Diagram(_) => None,
        }
    }

    pub fn diagram(&self) -> PlanarDiagram {
        match self {
            Input::Diagram(d) => d.clone(),
            _ => closure_trace(&self.word().expect("word input")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Formula,
    Engine,
    Oracle,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Formula, Route::Engine, Route::Oracle];
}

/// `CN_n` along one route; `None` when the route does not apply to the input
/// (the formula needs a Montesinos list, the engine a word).
///
/// Links are accepted: the formula and the engine are evaluated without
/// their knot check, and the oracle counts colorings of any diagram.
pub fn route_value(engine: &Engine, input: &Input, n: u32, route: Route) -> Result<Option<u64>> {
    order(n)?;
    match (route, input) {
        (Route::Formula, Input::Montesinos(s)) => coloring_count_formula_unchecked(s, n).map(Some),
        (Route::Formula, _) => Ok(None),
        (Route::Engine, Input::Diagram(_)) => Ok(None),
        (Route::Engine, _) => {
            let w = input.word().expect("word input");
            if closure_trace(&w).is_knot() {
                engine.coloring_count(&w, n).map(Some)
            } else {
                engine.coloring_count_unchecked(&w, n).map(Some)
            }
        }
        (Route::Oracle, _) => count_colorings(&input.diagram(), n).map(Some),
    }
}

/// One corpus entry at one order.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub input: String,
    pub n: u32,
    pub components: usize,
    pub formula: Option<u64>,
    pub engine: Option<u64>,
    pub oracle: Option<u64>,
    pub agree: bool,
    pub failures: Vec<String>,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

impl CheckReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<12} {:>3} {:>5} {:>8} {:>8} {:>8}  {}\n",
            "input", "n", "comp", "formula", "engine", "oracle", "status"
        );
        let show = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        for r in &self.rows {
            let status = if r.passed() {
                "ok".to_string()
            } else {
                format!("FAIL: {}", r.failures.join("; "))
            };
            out.push_str(&format!(
                "{:<12} {:>3} {:>5} {:>8} {:>8} {:>8}  {}\n",
                r.input,
                r.n,
                r.components,
                show(r.formula),
                show(r.engine),
                show(r.oracle),
                status
            ));
        }
        let failed = self.rows.iter().filter(|r| !r.passed()).count();
        out.push_str(&format!("{} rows, {} failed\n", self.rows.len(), failed));
        out
    }
}

fn check_one(engine: &Engine, spec: &MontesinosSpec, n: u32) -> CheckRow {
    let input = Input::Montesinos(spec.clone());
    let word = montesinos_word(spec);
    let diagram = closure_trace(&word);
    let mut failures = Vec::new();
    let mut values = [None; 3];
    for (slot, route) in values.iter_mut().zip(Route::ALL) {
        match route_value(engine, &input, n, route) {
            Ok(v) => *slot = v,
            Err(e) => failures.push(format!("{route:?}: {e}")),
        }
    }
    let [formula, engine_cn, oracle] = values;
    let present: Vec<u64> = values.iter().flatten().copied().collect();
    let agree = present.len() == 3 && present.windows(2).all(|w| w[0] == w[1]);
    if !agree {
        failures.push("routes disagree".into());
    }
    if let Some(cn) = oracle {
        if cn % n as u64 != 0 || cn < n as u64 {
            failures.push(format!("{cn} is not a positive multiple of {n}"));
        }
    }
    let ord = order(n).expect("validated");
    let plus = engine.evaluate(&word, ord, Sign::Plus);
    let minus = engine.evaluate(&word, ord, Sign::Minus);
    let (fp, fm) = (trace_value(&plus), trace_value(&minus));
    match (fp, fm, engine_cn) {
        (Some(fp), Some(fm), Some(cn)) => {
            if fp != cn as i64 {
                failures.push(format!("F(V+) = {fp} differs from CN = {cn}"));
            }
            if fm.abs() != fp {
                failures.push(format!("|F(V-)| = {} differs from F(V+) = {fp}", fm.abs()));
            }
        }
        _ => failures.push("quantum trace is not an integer".into()),
    }
    if let (Ok(a), Some(b)) = (coloring_count_formula_unchecked(&spec.mirror(), n), formula) {
        if a != b {
            failures.push(format!("mirror image gives {a}, not {b}"));
        }
    }
    CheckRow {
        input: spec.to_string(),
        n,
        components: diagram.n_components(),
        formula,
        engine: engine_cn,
        oracle,
        agree,
        failures,
    }
}

fn trace_value(v: &crate::dihedral::BlockVector) -> Option<i64> {
    use num_traits::ToPrimitive;
    crate::dihedral::quantum_trace(v).as_integer()?.to_i64()
}

/// Checks every `(spec, n)` pair in parallel; rows come back in corpus order,
/// then in order of `n`.
pub fn run_check(engine: &Engine, corpus: &[MontesinosSpec], orders: &[u32]) -> CheckReport {
    let jobs: Vec<(&MontesinosSpec, u32)> = corpus
        .iter()
        .flat_map(|s| orders.iter().map(move |&n| (s, n)))
        .collect();
    let rows: Vec<CheckRow> = jobs
        .par_iter()
        .map(|&(s, n)| check_one(engine, s, n))
        .collect();
    let passed = rows.iter().all(CheckRow::passed);
    CheckReport { rows, passed }
}
