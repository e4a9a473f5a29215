//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a check or validation failed, 2 bad input,
//! 3 a hypothesis of the requested suite does not hold.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::battery::{g_battery, l_battery};
use crate::error::Error;
use crate::etale::{ExtensionJson, SeparableExtension};
use crate::exactlin::FieldSpec;
use crate::functors::QuotientDatum;
use crate::groups::{catalog, is_normal, normality_witness, FiniteGroup, GroupError, GroupJson, Subgroup, CATALOG_NAMES, DEFAULT_MAX_ORDER};
use crate::quotient::{hom_space_p, preimage_of, quotient_functor_q, QuotientContext, QuotientObject};
use crate::report::{matrix_from_json, matrix_json};
use crate::suites::{self, Setup, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tannakit", version, about = "Exact checks for comodule categories of finite groups")]
struct Cli {
    /// Largest order accepted for groups read from files.
    #[arg(long, env = "TANNAKIT_MAX_GROUP_ORDER", default_value_t = DEFAULT_MAX_ORDER, global = true)]
    max_group_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group tables: validation and export.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[command(flatten)]
        target: Target,
        /// hopf-axioms, adjunction, takeuchi, quotient-equivalence,
        /// etale-splitting, base-change or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Field extension for base-change, as `{"degree": n, "mult_table": ...}`.
        #[arg(long)]
        extension: Option<String>,
    },
    /// Basis of Hom between two objects of the quotient category.
    Hom {
        #[command(flatten)]
        target: Target,
        /// `q'NAME`, `pre(NAME)` or a triple file.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Check the group axioms of a JSON table.
    Validate { file: String },
    /// Print a catalog group as JSON.
    Export { name: String },
}

#[derive(clap::Args, Debug)]
struct Target {
    /// Catalog name or JSON table file.
    #[arg(long)]
    group: String,
    /// Subgroup name (`trivial`, `center`, `A3`, `C<d>`, `gen:a,b`) or a file
    /// holding a JSON list of element labels.
    #[arg(long)]
    normal: String,
    #[arg(long, default_value = "Q")]
    field: String,
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let max = cli.max_group_order;
    let result = match cli.command {
        Command::Group { action } => match action {
            GroupAction::Validate { file } => validate(&file, max, out, err),
            GroupAction::Export { name } => export(&name, out),
        },
        Command::Verify {
            target,
            suite,
            extension,
        } => verify(&target, &suite, extension.as_deref(), max, out),
        Command::Hom { target, a, b } => hom(&target, &a, &b, max, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::EtaleHypothesis { .. } => EXIT_PRECONDITION,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn emit(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn validate(path: &str, max: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let json: GroupJson = read_json(path)?;
    match json.into_group(max) {
        Ok(g) => {
            emit(out, &json!({ "valid": true, "name": g.name(), "order": g.order() }))?;
            Ok(EXIT_OK)
        }
        Err(e @ GroupError::OrderTooLarge { .. }) => Err(Error::Group(e)),
        Err(e) => {
            writeln!(err, "invalid group: {e}")?;
            emit(out, &json!({ "valid": false, "axiom": e.axiom(), "message": e.to_string(), "witness": e }))?;
            Ok(EXIT_FAIL)
        }
    }
}

fn export(name: &str, out: &mut dyn Write) -> Result<i32, Error> {
    let g = catalog(name).map_err(|_| Error::UnknownName(format!("{name} (catalog: {})", CATALOG_NAMES.join(", "))))?;
    emit(out, &GroupJson::from_group(&g))?;
    Ok(EXIT_OK)
}

fn load_group(spec: &str, max: usize) -> Result<FiniteGroup, Error> {
    if let Ok(g) = catalog(spec) {
        return Ok(g);
    }
    if Path::new(spec).is_file() {
        let json: GroupJson = read_json(spec)?;
        return Ok(json.into_group(max)?);
    }
    Err(Error::UnknownName(format!("group {spec}: not a catalog name or a readable file")))
}

fn load_normal(g: &FiniteGroup, spec: &str) -> Result<Subgroup, Error> {
    let l = if Path::new(spec).is_file() {
        let labels: Vec<String> = read_json(spec)?;
        let members = labels
            .iter()
            .map(|l| g.index_of(l).ok_or_else(|| Error::UnknownName(format!("element {l}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Subgroup::new(g, members)?
    } else {
        Subgroup::by_name(g, spec)?
    };
    if !is_normal(g, &l) {
        let (member, by) = normality_witness(g, &l).expect("non-normal subgroup has a witness");
        return Err(Error::NotNormal { member, by });
    }
    Ok(l)
}

fn load_target(t: &Target, max: usize) -> Result<(FiniteGroup, Subgroup, FieldSpec), Error> {
    let field: FieldSpec = t.field.parse()?;
    let g = load_group(&t.group, max)?;
    let l = load_normal(&g, &t.normal)?;
    Ok((g, l, field))
}

fn verify(t: &Target, suite: &str, extension: Option<&str>, max: usize, out: &mut dyn Write) -> Result<i32, Error> {
    let suite: Suite = suite.parse()?;
    let (g, l, field) = load_target(t, max)?;
    let ext = match extension {
        Some(path) => {
            let json: ExtensionJson = read_json(path)?;
            Some(SeparableExtension::from_json(field, &json)?)
        }
        None => None,
    };
    let setup = Setup::new(&g, &l, field, ext)?;
    let report = suites::run(&setup, suite)?;
    emit(out, &report)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_FAIL })
}

/// A triple file: `{"x": name, "y": name, "f": rows}` with `x`, `y` from the
/// `G`-battery and `f: X -> Y (x) O(A)`.
fn load_object(ctx: &QuotientContext, spec: &str) -> Result<QuotientObject, Error> {
    let d = &ctx.datum;
    let g_items = g_battery(&d.g, &d.o_g);
    let find_g = |name: &str| {
        g_items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| Error::UnknownName(format!("G-battery item {name}")))
    };
    let inner = |s: &str| s.trim_start_matches('(').trim_end_matches(')').to_string();
    if let Some(name) = spec.strip_prefix("q'") {
        return quotient_functor_q(ctx, &find_g(&inner(name))?);
    }
    if let Some(name) = spec.strip_prefix("pre") {
        let name = inner(name);
        let u = l_battery(d)?
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownName(format!("L-battery item {name}")))?;
        return preimage_of(ctx, &u);
    }
    if Path::new(spec).is_file() {
        let v: Value = read_json(spec)?;
        let name = |k: &str| {
            v.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("triple field {k} must be a battery name")))
        };
        let x = find_g(name("x")?)?;
        let y = find_g(name("y")?)?;
        let f = matrix_from_json(ctx.field(), v.get("f").ok_or_else(|| Error::Parse("triple needs f".into()))?)?;
        return QuotientObject::new(ctx, x, y, f);
    }
    Err(Error::UnknownName(format!("object {spec}")))
}

fn hom(t: &Target, a: &str, b: &str, max: usize, out: &mut dyn Write) -> Result<i32, Error> {
    let (g, l, field) = load_target(t, max)?;
    let datum = QuotientDatum::new(&g, &l, field)?;
    if field.divides(datum.index()) {
        return Err(Error::EtaleHypothesis {
            characteristic: field.characteristic(),
            order: datum.index(),
        });
    }
    let ctx = QuotientContext::new(datum)?;
    let oa = load_object(&ctx, a)?;
    let ob = load_object(&ctx, b)?;
    let basis = hom_space_p(&ctx, &oa, &ob)?;
    emit(
        out,
        &json!({
            "a": a,
            "b": b,
            "field": field.to_string(),
            "image_dims": [oa.image().dim(), ob.image().dim()],
            "dim": basis.len(),
            "basis": basis.iter().map(|m| matrix_json(&m.matrix)).collect::<Vec<_>>(),
        }),
    )?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("tannakit").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn export_and_unknown_group() {
        let (code, out, _) = call(&["group", "export", "S3"]);
        assert_eq!(code, EXIT_OK);
        let j: GroupJson = serde_json::from_str(&out).unwrap();
        assert_eq!(j.labels.len(), 6);
        assert_eq!(call(&["group", "export", "S9"]).0, EXIT_INPUT);
    }

    #[test]
    fn hom_between_quotient_objects() {
        let (code, out, _) = call(&["hom", "--group", "S3", "--normal", "A3", "--a", "q'std", "--b", "q'std"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dim"], 2);
        let (code, out, _) = call(&["hom", "--group", "S3", "--normal", "A3", "--a", "q'I", "--b", "pre(cyc)"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["dim"], 0);
    }

    #[test]
    fn input_errors_and_preconditions() {
        assert_eq!(call(&["verify", "--group", "S3", "--normal", "C2", "--suite", "hopf-axioms"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify", "--group", "S3", "--normal", "A3", "--suite", "bogus"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify", "--group", "S3", "--normal", "A3", "--field", "F4"]).0, EXIT_INPUT);
        let (code, _, err) = call(&["verify", "--group", "S3", "--normal", "A3", "--field", "F3", "--suite", "etale-splitting"]);
        assert_eq!(code, EXIT_PRECONDITION, "{err}");
        assert_eq!(call(&["bogus"]).0, EXIT_INPUT);
    }

    #[test]
    fn verify_passes_on_small_input() {
        let (code, out, err) = call(&["verify", "--group", "C2", "--normal", "trivial", "--field", "F3"]);
        assert_eq!(code, EXIT_OK, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["summary"]["failed"], 0);
        assert_eq!(v["field"], "F3");
    }
}
