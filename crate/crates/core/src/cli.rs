//! Command-line front end: `sum`, `form`, `table` and `verify`.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 invalid input or a
//! violated guard. Every failure writes exactly one line starting `error:`.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::closed::{Route, SumEvaluator, SumSpec};
use crate::error::{Error, Result};
use crate::recursive::{HoradamScheme, LedinForm};
use crate::oracle::{brute_sum, verify_grid, GridRanges, VerificationReport, WeightMode};
use crate::scalar::{format_rational, parse_rational, ExactScalar};
use crate::sequence::HoradamParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    Fibonacci,
    Lucas,
    Pell,
    Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "ledin", about = "Exact weighted power sums of Fibonacci, Lucas and Horadam sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SeqArgs {
    /// Named sequence; `custom` requires --params
    #[arg(long, value_enum)]
    seq: Option<SeqName>,
    /// Explicit a,b,p,q as rational literals, e.g. 3/2,-5,7/3,2/5
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate sum_{k=1}^{n} k^m w_{hk+r}, optionally weighted by V_h^{-k}
    Sum {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        #[arg(long)]
        weighted: bool,
        /// Force one route (a closed-form name or `brute`)
        #[arg(long)]
        route: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print the recursive Ledin form P1, P2, C for one m
    Form {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print Ledin forms for m = 0..=max-m
    Table {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 5)]
        max_m: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Compare every route against brute force over a grid
    Verify {
        #[command(flatten)]
        seq: SeqArgs,
        /// e.g. `m=4,n=20,r=-3..3,h=2,weighted=both`; omitted keys use the default grid
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// Route requested for `sum`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteChoice {
    Closed(Route),
    Brute,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Request {
    Sum { spec: SumSpec, route: Option<RouteChoice> },
    Form { params: HoradamParams, m: u32, r: i64 },
    Table { params: HoradamParams, max_m: u32, r: i64 },
    Verify { ranges: GridRanges },
}

/// A parsed and validated command line.
#[derive(Clone, Debug, PartialEq)]
pub struct CliRequest {
    pub request: Request,
    pub format: OutputFormat,
}

/// Parses `a,b,p,q`.
pub fn parse_params(text: &str) -> Result<HoradamParams> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput(format!("--params expects a,b,p,q; got `{text}`")));
    }
    let mut vals = parts.into_iter().map(parse_rational);
    let (a, b, p, q) = (
        vals.next().unwrap()?,
        vals.next().unwrap()?,
        vals.next().unwrap()?,
        vals.next().unwrap()?,
    );
    HoradamParams::new(a, b, p, q)
}

fn resolve_params(args: &SeqArgs) -> Result<Option<HoradamParams>> {
    match (args.seq, &args.params) {
        (Some(SeqName::Custom) | None, Some(text)) => parse_params(text).map(Some),
        (Some(SeqName::Custom), None) => Err(Error::InvalidInput("--seq custom requires --params".into())),
        (Some(_), Some(_)) => Err(Error::InvalidInput("--params is only valid with --seq custom".into())),
        (Some(SeqName::Fibonacci), None) => Ok(Some(HoradamParams::fibonacci())),
        (Some(SeqName::Lucas), None) => Ok(Some(HoradamParams::lucas())),
        (Some(SeqName::Pell), None) => Ok(Some(HoradamParams::from_ints(0, 1, 2, -1)?)),
        (None, None) => Ok(None),
    }
}

fn params_or_fibonacci(args: &SeqArgs) -> Result<HoradamParams> {
    Ok(resolve_params(args)?.unwrap_or_else(HoradamParams::fibonacci))
}

fn parse_route(text: &str) -> Result<RouteChoice> {
    if text == "brute" {
        return Ok(RouteChoice::Brute);
    }
    match text.parse::<Route>()? {
        Route::HsuTan => Err(Error::InvalidInput("route hsu_tan evaluates plain power sums only".into())),
        route => Ok(RouteChoice::Closed(route)),
    }
}

/// Parses `key=value` pairs over the default grid: `m`, `n`, `h` (maxima),
/// `r` (`lo..hi` or a single value) and `weighted` (`yes`, `no`, `both`).
pub fn parse_grid(text: &str, params: Option<HoradamParams>) -> Result<GridRanges> {
    let mut ranges = GridRanges::default_grid();
    if let Some(p) = params {
        ranges.params = vec![p];
    }
    let bad = |what: &str| Error::InvalidInput(format!("invalid grid {what} in `{text}`"));
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "default") {
        let (key, value) = item.split_once('=').ok_or_else(|| bad("entry"))?;
        match key.trim() {
            "m" => ranges.m_max = value.parse().map_err(|_| bad("m"))?,
            "n" => ranges.n_max = value.parse().map_err(|_| bad("n"))?,
            "h" => ranges.h_max = value.parse().map_err(|_| bad("h"))?,
            "r" => {
                let (lo, hi) = match value.split_once("..") {
                    Some((lo, hi)) => (lo, hi),
                    None => (value, value),
                };
                ranges.r_min = lo.parse().map_err(|_| bad("r"))?;
                ranges.r_max = hi.parse().map_err(|_| bad("r"))?;
            }
            "weighted" => {
                ranges.weighted = match value {
                    "yes" | "true" => WeightMode::Weighted,
                    "no" | "false" => WeightMode::Unweighted,
                    "both" => WeightMode::Both,
                    _ => return Err(bad("weighted")),
                }
            }
            _ => return Err(bad("key")),
        }
    }
    Ok(ranges)
}

impl CliRequest {
    fn from_cli(cli: Cli) -> Result<Self> {
        let (request, format) = match cli.command {
            Command::Sum { seq, m, n, r, h, weighted, route, format } => {
                let params = params_or_fibonacci(&seq)?;
                let spec = SumSpec::new(m, n, r, h, params, weighted)?;
                let route = route.as_deref().map(parse_route).transpose()?;
                (Request::Sum { spec, route }, format)
            }
            Command::Form { seq, m, r, format } => {
                (Request::Form { params: params_or_fibonacci(&seq)?, m, r }, format)
            }
            Command::Table { seq, max_m, r, format } => {
                (Request::Table { params: params_or_fibonacci(&seq)?, max_m, r }, format)
            }
            Command::Verify { seq, grid, format } => {
                let ranges = parse_grid(grid.as_deref().unwrap_or(""), resolve_params(&seq)?)?;
                (Request::Verify { ranges }, format)
            }
        };
        Ok(Self { request, format })
    }
}

/// JSON shape printed by `sum --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumOutput {
    pub value: String,
    pub routes: BTreeMap<String, String>,
    pub guards: Vec<String>,
}

impl SumOutput {
    pub fn parse(text: &str) -> Result<Self> {
        let out: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed sum output: {e}")))?;
        // Every rendered rational must parse back.
        for v in std::iter::once(&out.value).chain(out.routes.values()).chain(&out.guards) {
            parse_rational(v)?;
        }
        Ok(out)
    }

    pub fn value(&self) -> Result<ExactScalar> {
        parse_rational(&self.value)
    }
}

#[derive(Serialize)]
struct FormJson {
    m: u32,
    r: i64,
    p1: Vec<String>,
    p2: Vec<String>,
    constant: String,
}

impl FormJson {
    fn new(m: u32, form: &LedinForm) -> Self {
        Self {
            m,
            r: form.shift,
            p1: form.p1.coeffs().iter().map(format_rational).collect(),
            p2: form.p2.coeffs().iter().map(format_rational).collect(),
            constant: format_rational(&form.constant),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("output failed: {e}"))
}

fn run_sum(
    spec: &SumSpec,
    route: Option<RouteChoice>,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let evaluator = SumEvaluator::new(spec.params.clone());
    let mut routes = BTreeMap::new();
    let mut guards: Vec<String> = Vec::new();
    let mut first_closed: Option<ExactScalar> = None;
    let mut forced: Option<ExactScalar> = None;
    let mut forced_err: Option<Error> = None;

    for candidate in Route::SUM_ROUTES {
        if !evaluator.applies(spec, candidate) {
            continue;
        }
        match evaluator.evaluate(spec, candidate) {
            Ok(report) => {
                for g in &report.guard_denominators {
                    let g = format_rational(g);
                    if !guards.contains(&g) {
                        guards.push(g);
                    }
                }
                if first_closed.is_none() {
                    first_closed = Some(report.value.clone());
                }
                if route == Some(RouteChoice::Closed(candidate)) {
                    forced = Some(report.value.clone());
                }
                routes.insert(candidate.name().to_string(), format_rational(&report.value));
            }
            Err(e) => {
                if route == Some(RouteChoice::Closed(candidate)) {
                    forced_err = Some(e);
                }
            }
        }
    }
    let brute = brute_sum(spec)?;
    routes.insert("brute".to_string(), format_rational(&brute));

    let value = match route {
        Some(RouteChoice::Brute) => brute,
        Some(RouteChoice::Closed(r)) => match (forced, forced_err) {
            (Some(v), _) => v,
            (None, Some(e)) => return Err(e),
            (None, None) => {
                return Err(Error::GuardViolation(format!("route {r} does not apply to this sum")));
            }
        },
        None => match first_closed {
            Some(v) => v,
            None => {
                writeln!(err, "notice: no closed-form route applies (guard denominators vanish); using brute force")
                    .map_err(io_err)?;
                brute
            }
        },
    };

    match format {
        OutputFormat::Text => writeln!(out, "{}", format_rational(&value)).map_err(io_err)?,
        OutputFormat::Json => {
            let payload = SumOutput { value: format_rational(&value), routes, guards };
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).map_err(io_err)?).map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["m", "n", "r", "h", "weighted", "params", "value"]).map_err(io_err)?;
            w.write_record([
                spec.m.to_string(),
                spec.n.to_string(),
                spec.r.to_string(),
                spec.h.to_string(),
                spec.weighted.to_string(),
                spec.params.to_string(),
                format_rational(&value),
            ])
            .map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_forms(forms: &[(u32, LedinForm)], format: OutputFormat, out: &mut dyn Write, single: bool) -> Result<()> {
    match format {
        OutputFormat::Text if single => {
            let (_, form) = &forms[0];
            writeln!(out, "P1 = {}", form.p1).map_err(io_err)?;
            writeln!(out, "P2 = {}", form.p2).map_err(io_err)?;
            writeln!(out, "C = {}", format_rational(&form.constant)).map_err(io_err)?;
        }
        OutputFormat::Text => {
            if let Some((_, first)) = forms.first() {
                writeln!(out, "# Ledin forms for w{} with r = {}", first.params, first.shift).map_err(io_err)?;
            }
            writeln!(out, "m\tP1\tP2\tC").map_err(io_err)?;
            for (m, form) in forms {
                writeln!(out, "{m}\t{}\t{}\t{}", form.p1, form.p2, format_rational(&form.constant))
                    .map_err(io_err)?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<FormJson> = forms.iter().map(|(m, f)| FormJson::new(*m, f)).collect();
            let text = if single {
                serde_json::to_string_pretty(&rows[0])
            } else {
                serde_json::to_string_pretty(&rows)
            }
            .map_err(io_err)?;
            writeln!(out, "{text}").map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["m", "p1", "p2", "constant"]).map_err(io_err)?;
            for (m, form) in forms {
                w.write_record([
                    m.to_string(),
                    form.p1.to_string(),
                    form.p2.to_string(),
                    format_rational(&form.constant),
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

fn write_report(report: &VerificationReport, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Text => {
            writeln!(out, "status: {}", report.status).map_err(io_err)?;
            writeln!(out, "grid: {}", report.grid_description).map_err(io_err)?;
            writeln!(out, "cases run: {}", report.cases_run).map_err(io_err)?;
            writeln!(out, "route checks: {}", report.route_checks).map_err(io_err)?;
            writeln!(out, "guard skips: {}", report.guard_skips).map_err(io_err)?;
            writeln!(out, "mismatches: {}", report.mismatches.len()).map_err(io_err)?;
            for mm in &report.mismatches {
                let s = &mm.spec;
                writeln!(
                    out,
                    "  {} m={} n={} r={} h={} weighted={} params={}: expected {} got {}",
                    mm.route,
                    s.m,
                    s.n,
                    s.r,
                    s.h,
                    s.weighted,
                    s.params,
                    format_rational(&mm.expected),
                    format_rational(&mm.got)
                )
                .map_err(io_err)?;
            }
            writeln!(out, "wall time: {:.3}s", report.wall_time).map_err(io_err)?;
        }
        OutputFormat::Json => writeln!(out, "{}", report.to_json()).map_err(io_err)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["route", "m", "n", "r", "h", "weighted", "params", "expected", "got"])
                .map_err(io_err)?;
            for mm in &report.mismatches {
                let s = &mm.spec;
                w.write_record([
                    mm.route.to_string(),
                    s.m.to_string(),
                    s.n.to_string(),
                    s.r.to_string(),
                    s.h.to_string(),
                    s.weighted.to_string(),
                    s.params.to_string(),
                    format_rational(&mm.expected),
                    format_rational(&mm.got),
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

fn dispatch(request: &CliRequest, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &request.request {
        Request::Sum { spec, route } => run_sum(spec, *route, request.format, out, err),
        Request::Form { params, m, r } => {
            let form = HoradamScheme::new(params.clone())?.form(*m, *r);
            write_forms(&[(*m, form)], request.format, out, true)?;
            Ok(EXIT_OK)
        }
        Request::Table { params, max_m, r } => {
            let scheme = HoradamScheme::new(params.clone())?;
            let forms: Vec<_> = (0..=*max_m).map(|m| (m, scheme.form(m, *r))).collect();
            write_forms(&forms, request.format, out, false)?;
            Ok(EXIT_OK)
        }
        Request::Verify { ranges } => {
            let report = verify_grid(ranges);
            write_report(&report, request.format, out)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Executes a validated request, writing results to `out` and diagnostics to `err`.
pub fn run(request: &CliRequest, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(request, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

/// Parses `args` (including the program name) and runs the request.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            let _ = writeln!(err, "error: {line}");
            return EXIT_INVALID;
        }
    };
    match CliRequest::from_cli(cli) {
        Ok(request) => run(&request, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(std::iter::once("ledin").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn params_literal() {
        let p = parse_params("3/2,-5,7/3,2/5").unwrap();
        assert_eq!(p, HoradamParams::new(ratio(3, 2), int(-5), ratio(7, 3), ratio(2, 5)).unwrap());
        assert!(parse_params("1,2,3").is_err());
        assert!(parse_params("0,1,0,1").is_err());
        assert!(parse_params("0,1,x,1").is_err());
    }

    #[test]
    fn grid_literal() {
        let g = parse_grid("m=2,n=10,r=-3..4,h=2,weighted=no", None).unwrap();
        assert_eq!((g.m_max, g.n_max, g.r_min, g.r_max, g.h_max), (2, 10, -3, 4, 2));
        assert_eq!(g.weighted, WeightMode::Unweighted);
        assert_eq!(g.params.len(), 6);
        let g = parse_grid("r=5", Some(HoradamParams::lucas())).unwrap();
        assert_eq!((g.r_min, g.r_max), (5, 5));
        assert_eq!(g.params, vec![HoradamParams::lucas()]);
        assert!(parse_grid("q=3", None).is_err());
        assert!(parse_grid("m=-1", None).is_err());
    }

    #[test]
    fn sum_prints_value() {
        let (code, out, err) = call(&["sum", "--seq", "fibonacci", "--m", "1", "--n", "4"]);
        assert_eq!((code, out.as_str(), err.as_str()), (0, "21\n", ""));
    }

    #[test]
    fn negative_shift_and_rational_params() {
        let (code, out, _) = call(&["sum", "--params", "-1,2,1,-1", "--m", "0", "--n", "2", "--r", "-1"]);
        // w: w_{-1} = 3, w_0 = -1, w_1 = 2; sum of w_0 + w_1 = 1
        assert_eq!((code, out.as_str()), (0, "1\n"));
    }

    #[test]
    fn forced_route_reports_guard() {
        let (code, out, err) =
            call(&["sum", "--params", "1,1,2,1", "--m", "1", "--n", "3", "--route", "ledin_assembled"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err, "error: q - p + 1 = 0: excluded by Horadam definition\n");
    }

    #[test]
    fn invalid_input_is_single_error_line() {
        for args in [
            &["sum", "--m", "1"][..],
            &["sum", "--seq", "custom", "--m", "1", "--n", "2"],
            &["sum", "--params", "0,1,1,0", "--m", "1", "--n", "2"],
            &["sum", "--m", "1", "--n", "2", "--h", "0"],
            &["sum", "--m", "1", "--n", "2", "--route", "hsu_tan"],
            &["verify", "--grid", "m=x"],
            &["bogus"],
        ] {
            let (code, out, err) = call(args);
            assert_eq!(code, 2, "{args:?}");
            assert!(out.is_empty(), "{args:?}");
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
            assert!(err.starts_with("error:"), "{args:?}: {err}");
        }
    }

    #[test]
    fn form_text_and_csv() {
        let (code, out, _) = call(&["form", "--seq", "lucas", "--m", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "m,p1,p2,constant\n1,\"[-1, 1]\",\"[-2, 1]\",4\n");
    }

    #[test]
    fn verify_small_grid_passes() {
        let (code, out, _) = call(&["verify", "--seq", "pell", "--grid", "m=2,n=6,r=-1..1,h=2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("status: PASS\n"));
    }
}
