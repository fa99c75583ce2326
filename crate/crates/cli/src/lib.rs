//! Command-line front end. [`run`] does all the work so that it can be
//! driven from tests; `main` only forwards the process arguments.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use dwknot::check::{builtin_corpus, route_value, run_check, Input, Route, DEFAULT_ORDERS};
use dwknot::cyclotomic::CycloNumber;
use dwknot::dihedral::{rot_matrix, BlockIndex, Sign};
use dwknot::engine::{order, Engine};
use dwknot::tangle::{closure_trace, montesinos_word, parse_word, MontesinosSpec, PlanarDiagram};
use dwknot::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dwknot",
    version,
    about = "Dihedral quantum-double invariants and Fox n-coloring counts of arborescent knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of Fox n-colorings, by the formula, the block engine and/or the oracle.
    Cn {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        orders: OrderArgs,
        #[arg(long, value_enum, default_value = "all")]
        route: RouteArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// F(K,V+), F(K,V-) and the writhe parity of a knot.
    Invariant {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        orders: OrderArgs,
        /// Report only F(K,V+) or F(K,V-).
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: Option<Sign>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Planar diagram of the closure, as PD JSON.
    Pd {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Cross-route consistency sweep over the built-in corpus.
    Check {
        /// Orders to sweep (default 3,5,...,15).
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Corrupt one rotation-matrix entry (to exercise the failure path).
        #[arg(long, hide = true)]
        inject_rot_fault: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Montesinos list, e.g. "1/3,-2/1,5/2".
    #[arg(long, allow_hyphen_values = true)]
    montesinos: Option<String>,
    /// Tangle word, e.g. "rt(2*rt(3))".
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// PD JSON file.
    #[arg(long)]
    pd: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct OrderArgs {
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
}

impl OrderArgs {
    fn orders(&self) -> Vec<u32> {
        match (&self.n, &self.n_list) {
            (Some(n), _) => vec![*n],
            (None, Some(list)) => list.clone(),
            (None, None) => unreachable!("clap requires one of --n, --n-list"),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Formula,
    Engine,
    Oracle,
    All,
}

impl RouteArg {
    fn routes(self) -> Vec<Route> {
        match self {
            RouteArg::Formula => vec![Route::Formula],
            RouteArg::Engine => vec![Route::Engine],
            RouteArg::Oracle => vec![Route::Oracle],
            RouteArg::All => Route::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" | "\u{2212}" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonIntegerTrace | Error::NonIntegerN(_) | Error::NotEquivariant => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Cn {
            input,
            orders,
            route,
            format,
        } => cmd_cn(
            &read_input(&input)?,
            &check_orders(&orders.orders())?,
            route,
            format,
            out,
        ),
        Command::Invariant {
            input,
            orders,
            sign,
            format,
        } => cmd_invariant(
            &read_input(&input)?,
            &check_orders(&orders.orders())?,
            sign,
            format,
            out,
        ),
        Command::Pd { input } => cmd_pd(&read_input(&input)?, out),
        Command::Check {
            n_list,
            format,
            inject_rot_fault,
        } => {
            let orders = check_orders(&n_list.unwrap_or_else(|| DEFAULT_ORDERS.to_vec()))?;
            cmd_check(&orders, format, inject_rot_fault, out)
        }
    }
}

fn read_input(args: &InputArgs) -> Result<(String, Input), Failure> {
    if let Some(s) = &args.montesinos {
        let spec: MontesinosSpec = s.parse()?;
        return Ok((spec.to_string(), Input::Montesinos(spec)));
    }
    if let Some(s) = &args.word {
        let w = parse_word(s)?;
        return Ok((w.to_string(), Input::Word(w)));
    }
    let path = args.pd.as_ref().expect("clap requires one input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let d = PlanarDiagram::from_pd_json(&text)?;
    Ok((path.display().to_string(), Input::Diagram(d)))
}

fn check_orders(orders: &[u32]) -> Result<Vec<u32>, Failure> {
    if orders.is_empty() {
        return Err(input_error("empty order list"));
    }
    for &n in orders {
        order(n)?;
    }
    Ok(orders.to_vec())
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("write failed: {e}"),
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn cmd_cn(
    (label, input): &(String, Input),
    orders: &[u32],
    route: RouteArg,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let engine = Engine::new();
    let routes = route.routes();
    let mut code = EXIT_OK;
    for &n in orders {
        let mut values = Vec::new();
        for &r in &routes {
            values.push((r, route_value(&engine, input, n, r)?));
        }
        let present: Vec<u64> = values.iter().filter_map(|(_, v)| *v).collect();
        if present.is_empty() {
            return Err(input_error("no requested route applies to this input"));
        }
        let agree = present.windows(2).all(|w| w[0] == w[1]);
        if !agree {
            code = EXIT_VERIFY;
        }
        match format {
            Format::Json => {
                let mut routes_obj = Map::new();
                for (r, v) in &values {
                    routes_obj.insert(route_name(*r).into(), v.map_or(Value::Null, Value::from));
                }
                let mut obj = Map::new();
                obj.insert("input".into(), Value::from(label.clone()));
                obj.insert("n".into(), Value::from(n));
                obj.insert("routes".into(), Value::Object(routes_obj));
                obj.insert("agree".into(), Value::from(agree));
                emit(out, &to_json(&obj))?;
            }
            Format::Text => {
                let parts: Vec<String> = values
                    .iter()
                    .map(|(r, v)| {
                        let v = v.map_or("n/a".to_string(), |x| x.to_string());
                        format!("{}={v}", route_name(*r))
                    })
                    .collect();
                let verdict = if agree { "agree" } else { "DISAGREE" };
                emit(out, &format!("{label} n={n} {} {verdict}", parts.join(" ")))?;
            }
        }
    }
    Ok(code)
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Formula => "formula",
        Route::Engine => "engine",
        Route::Oracle => "oracle",
    }
}

fn cmd_invariant(
    (_, input): &(String, Input),
    orders: &[u32],
    sign: Option<Sign>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let word = input
        .word()
        .ok_or_else(|| input_error("the invariant command needs --word or --montesinos"))?;
    let engine = Engine::new();
    for &n in orders {
        let report = engine.invariant_report(&word, n)?;
        let value = sign.map(|s| match s {
            Sign::Plus => report.value_plus,
            Sign::Minus => report.value_minus,
        });
        match format {
            Format::Json => {
                let mut obj = match serde_json::to_value(&report).expect("serializable") {
                    Value::Object(m) => m,
                    _ => unreachable!(),
                };
                if let (Some(s), Some(v)) = (sign, value) {
                    obj.insert("sign".into(), Value::from(s.to_string()));
                    obj.insert("value".into(), Value::from(v));
                }
                emit(out, &to_json(&obj))?;
            }
            Format::Text => {
                let line = match (sign, value) {
                    (Some(s), Some(v)) => format!(
                        "{} n={n} F(V{s})={v} writhe_parity={}",
                        report.word, report.writhe_parity
                    ),
                    _ => format!(
                        "{} n={n} F(V+)={} F(V-)={} writhe_parity={} CN={}",
                        report.word,
                        report.value_plus,
                        report.value_minus,
                        report.writhe_parity,
                        report.cn
                    ),
                };
                emit(out, &line)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_pd((_, input): &(String, Input), out: &mut dyn Write) -> Result<i32, Failure> {
    let d = match input {
        Input::Montesinos(s) => closure_trace(&montesinos_word(s)),
        Input::Word(w) => closure_trace(w),
        Input::Diagram(d) => d.clone(),
    };
    emit(out, &d.to_pd_json())?;
    Ok(EXIT_OK)
}

fn cmd_check(
    orders: &[u32],
    format: Format,
    inject_fault: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut engine = Engine::new();
    if inject_fault {
        for &n in orders {
            let ord = order(n)?;
            let mut rot = rot_matrix(ord, Sign::Plus);
            let bumped = rot.get(BlockIndex::Unit, BlockIndex::Unit) + &CycloNumber::one(ord);
            rot.set(BlockIndex::Unit, BlockIndex::Unit, bumped);
            engine = engine.with_rot_override(rot);
        }
    }
    let report = run_check(&engine, &builtin_corpus(), orders);
    match format {
        Format::Json => emit(out, &to_json(&report))?,
        Format::Text => {
            write!(out, "{}", report.table()).map_err(|e| input_error(e.to_string()))?
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
}
