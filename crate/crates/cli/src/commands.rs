use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde_json::{Map, Value};
use thickset::chromalattice::{contains, decompose_spectra, intersect_spectra, SpectraThick};
use thickset::ksengine::{
    is_indecomposable, join_supports, ks_decompose, support_graph, DecompositionMode, KsError,
    SupportGraph,
};
use thickset::ktheory::k0_class;
use thickset::specmodel::json::{support_from_value, support_to_value};
use thickset::specmodel::{
    enumerate_thick_supports, Catalog, FinitePrimePoset, ModeHint, SpecModel, ThickSupport,
    ZSupport,
};
use thickset::splitter::split_complex;
use thickset::zcomplex::json::{complex_from_value, complex_to_value, homology_to_value};
use thickset::zcomplex::PerfectComplexZ;

use crate::{CatalogOp, Cli, CliError, Command, ComplexOp, Format, Mode, ModelArgs, SpectraOp};

const CATALOG_ENV: &str = "THICKSET_CATALOG_DIR";

pub fn run(cli: &Cli) -> Result<String, CliError> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Decompose { .. }) {
        return Err(CliError::input("--format dot is only available for decompose"));
    }
    match &cli.command {
        Command::Decompose { model, support } => decompose(model, support, cli.format),
        Command::Enumerate { model, nonempty } => enumerate(model, *nonempty, cli.format),
        Command::Complex { op } => complex(op, cli.format),
        Command::Spectra { op } => spectra(op, cli.format),
        Command::Catalog { op: CatalogOp::List } => catalog_list(cli.format),
        Command::Verify { model, input } => verify(model, input),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn lines(rows: impl IntoIterator<Item = String>) -> String {
    rows.into_iter().map(|r| r + "\n").collect()
}

/// Reads `-` from stdin, inline JSON as is, and anything else as a path.
fn read_payload(arg: &str) -> Result<Value, CliError> {
    let trimmed = arg.trim_start();
    let (text, origin) = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("stdin: {e}")))?;
        (buf, "stdin".to_owned())
    } else if trimmed.starts_with(['{', '[', '"']) {
        (arg.to_owned(), "inline JSON".to_owned())
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        (text, arg.to_owned())
    };
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{origin}: {e}")))
}

fn load_catalog() -> Result<Catalog, CliError> {
    let mut catalog = Catalog::builtin();
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        catalog.load_dir(Path::new(&dir))?;
    }
    Ok(catalog)
}

struct Resolved {
    model: SpecModel,
    name: Option<String>,
    hint: ModeHint,
}

fn is_integers(name: &str) -> bool {
    matches!(name, "SpecZ" | "Z")
}

fn resolve_model(args: &ModelArgs) -> Result<Resolved, CliError> {
    if let Some(path) = &args.poset {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))?;
        let poset = FinitePrimePoset::from_json_str(&text)?;
        let hint = if poset.cone_point().is_some() { ModeHint::Punctured } else { ModeHint::Plain };
        return Ok(Resolved { model: SpecModel::Poset(Arc::new(poset)), name: None, hint });
    }
    let Some(name) = &args.model else {
        return Err(CliError::input("one of --model or --poset is required"));
    };
    if is_integers(name) {
        return Ok(Resolved { model: SpecModel::Integers, name: Some("SpecZ".into()), hint: ModeHint::Plain });
    }
    let entry = load_catalog()?.get(name)?.clone();
    Ok(Resolved { model: SpecModel::Poset(entry.poset), name: Some(entry.name), hint: entry.mode_hint })
}

fn punctured(model: &SpecModel) -> Result<DecompositionMode, CliError> {
    match model {
        SpecModel::Poset(p) => DecompositionMode::at_cone_point(p).ok_or_else(|| {
            CliError::domain("PuncturedUnsupported", "the poset declares no cone point")
        }),
        SpecModel::Integers => Err(KsError::PuncturedUnsupported.into()),
    }
}

fn resolve_mode(r: &Resolved, requested: Option<Mode>) -> Result<DecompositionMode, CliError> {
    match (requested, r.hint) {
        (Some(Mode::Plain), _) | (None, ModeHint::Plain) => Ok(DecompositionMode::Plain),
        (Some(Mode::Punctured), _) | (None, ModeHint::Punctured) => punctured(&r.model),
    }
}

fn with_model(v: Value, name: &Option<String>) -> Value {
    let Value::Object(mut obj) = v else { return v };
    if let Some(n) = name {
        obj.insert("model".into(), Value::String(n.clone()));
    }
    Value::Object(obj)
}

fn decompose(args: &ModelArgs, support: &str, format: Format) -> Result<String, CliError> {
    let r = resolve_model(args)?;
    let mode = resolve_mode(&r, args.mode)?;
    let support = support_from_value(&r.model, &read_payload(support)?)?;
    let d = ks_decompose(&support, &mode)?;
    Ok(match format {
        Format::Json => pretty(&with_model(d.to_value(), &r.name)),
        Format::Dot => match support_graph(&support, &mode) {
            Ok(g) => g.to_dot(),
            // the cone point alone has no vertices once it is removed
            Err(KsError::EmptySupport) => SupportGraph::new(Vec::new(), []).to_dot(),
            Err(e) => return Err(e.into()),
        },
        Format::Table => lines(
            std::iter::once(format!("support\t{}\t{}", d.support(), mode.label())).chain(
                d.components().iter().enumerate().map(|(k, c)| format!("component {k}\t{c}")),
            ),
        ),
    })
}

fn enumerate(args: &ModelArgs, nonempty: bool, format: Format) -> Result<String, CliError> {
    let r = resolve_model(args)?;
    let mode = resolve_mode(&r, args.mode)?;
    let SpecModel::Poset(poset) = &r.model else {
        return Err(CliError::domain("NotEnumerable", "Spec Z has infinitely many thick supports"));
    };
    let mut rows = Vec::new();
    for s in enumerate_thick_supports(poset, nonempty)? {
        let components = match ks_decompose(&s, &mode) {
            Ok(d) => d.into_components(),
            Err(KsError::EmptySupport) => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        let indecomposable = is_indecomposable(&s, &mode)?;
        rows.push((s, indecomposable, components));
    }
    Ok(match format {
        Format::Json => {
            let supports = rows
                .iter()
                .map(|(s, ind, comps)| {
                    let mut o = Map::new();
                    o.insert("support".into(), support_to_value(s));
                    o.insert("indecomposable".into(), Value::Bool(*ind));
                    o.insert("components".into(), comps.iter().map(support_to_value).collect());
                    Value::Object(o)
                })
                .collect();
            let mut out = Map::new();
            out.insert("mode".into(), Value::String(mode.label().into()));
            out.insert("supports".into(), Value::Array(supports));
            pretty(&with_model(Value::Object(out), &r.name))
        }
        _ => lines(rows.iter().map(|(s, ind, comps)| {
            let parts: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
            let status = if *ind { "indecomposable" } else { "decomposable" };
            format!("{s}\t{status}\t{}", parts.join(" + "))
        })),
    })
}

fn read_complex(input: &str) -> Result<PerfectComplexZ, CliError> {
    Ok(complex_from_value(&read_payload(input)?)?)
}

fn complex(op: &ComplexOp, format: Format) -> Result<String, CliError> {
    let table = format == Format::Table;
    match op {
        ComplexOp::Homology(i) => {
            let h = read_complex(&i.input)?.homology();
            Ok(if table {
                lines(h.iter().map(|(n, g)| format!("H_{n}\t{g}")))
            } else {
                pretty(&homology_to_value(&h))
            })
        }
        ComplexOp::Support(i) => {
            let s: ThickSupport = read_complex(&i.input)?.support()?.into();
            Ok(if table { format!("{s}\n") } else { pretty(&support_to_value(&s)) })
        }
        ComplexOp::Split(i) => {
            let r = split_complex(&read_complex(&i.input)?)?;
            Ok(if table {
                lines(r.pieces.iter().map(|p| format!("{}\t{}", p.component, p.complex.homology())))
            } else {
                pretty(&r.to_value())
            })
        }
        ComplexOp::K0 { input, support } => {
            let c = read_complex(&input.input)?;
            let ambient = match support {
                Some(s) => {
                    let t = support_from_value(&SpecModel::Integers, &read_payload(s)?)?;
                    t.as_integers().cloned().unwrap_or(ZSupport::Whole)
                }
                None => c.support()?,
            };
            let class = k0_class(&c, &ambient)?;
            Ok(if table { format!("{}\t{class}\n", class.ambient()) } else { pretty(&class.to_value()) })
        }
        ComplexOp::Dual(i) => {
            let d = read_complex(&i.input)?.dual();
            Ok(pretty(&complex_to_value(&d)))
        }
    }
}

fn read_pair(input: &str) -> Result<(SpectraThick, SpectraThick), CliError> {
    match read_payload(input)? {
        Value::Array(items) if items.len() == 2 => {
            Ok((SpectraThick::from_value(&items[0])?, SpectraThick::from_value(&items[1])?))
        }
        _ => Err(CliError::input("expected a two-element array [a, b]")),
    }
}

fn spectra(op: &SpectraOp, format: Format) -> Result<String, CliError> {
    let table = format == Format::Table;
    match op {
        SpectraOp::Decompose(i) => {
            let t = SpectraThick::from_value(&read_payload(&i.input)?)?;
            let parts = decompose_spectra(&t);
            Ok(if table {
                lines(parts.iter().map(|p| p.to_string()))
            } else {
                pretty(&Value::Array(parts.iter().map(SpectraThick::to_value).collect()))
            })
        }
        SpectraOp::Intersect(i) => {
            let (a, b) = read_pair(&i.input)?;
            let m = intersect_spectra(&a, &b);
            Ok(if table { format!("{m}\n") } else { pretty(&m.to_value()) })
        }
        SpectraOp::Contains(i) => {
            let (a, b) = read_pair(&i.input)?;
            let yes = contains(&a, &b);
            Ok(if table {
                format!("{yes}\n")
            } else {
                let mut o = Map::new();
                o.insert("contains".into(), Value::Bool(yes));
                pretty(&Value::Object(o))
            })
        }
    }
}

fn catalog_list(format: Format) -> Result<String, CliError> {
    let catalog = load_catalog()?;
    Ok(if format == Format::Table {
        lines(catalog.entries().map(|e| format!("{}\t{}", e.name, e.description)))
    } else {
        let entries = catalog
            .entries()
            .map(|e| {
                let mut o = Map::new();
                o.insert("name".into(), Value::String(e.name.clone()));
                o.insert("description".into(), Value::String(e.description.clone()));
                let hint = match e.mode_hint {
                    ModeHint::Plain => "plain",
                    ModeHint::Punctured => "punctured",
                };
                o.insert("mode_hint".into(), Value::String(hint.into()));
                let poset = serde_json::to_value(e.poset.to_description())?;
                o.insert("poset".into(), poset);
                Ok(Value::Object(o))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        pretty(&Value::Array(entries))
    })
}

fn verify(args: &ModelArgs, input: &str) -> Result<String, CliError> {
    let v = read_payload(input)?;
    let field = |k: &str| v.get(k).ok_or_else(|| CliError::input(format!("missing field \"{k}\"")));
    let mut args = ModelArgs { model: args.model.clone(), poset: args.poset.clone(), mode: args.mode };
    if args.model.is_none() && args.poset.is_none() {
        args.model = field("model")?.as_str().map(str::to_owned);
    }
    let r = resolve_model(&args)?;
    let mode = match field("mode")?.as_str() {
        Some("plain") => DecompositionMode::Plain,
        Some("punctured") => match v.get("cone_point").and_then(Value::as_str) {
            Some(c) => DecompositionMode::punctured(c),
            None => punctured(&r.model)?,
        },
        _ => return Err(CliError::input("\"mode\" must be \"plain\" or \"punctured\"")),
    };
    let support = support_from_value(&r.model, field("support")?)?;
    let claimed = field("components")?
        .as_array()
        .ok_or_else(|| CliError::input("\"components\" must be an array"))?
        .iter()
        .map(|c| support_from_value(&r.model, c))
        .collect::<Result<Vec<_>, _>>()?;

    let joined = join_supports(&r.model, &claimed, &mode)?;
    if joined != support {
        return Err(CliError::domain("VerifyMismatch", format!("components join to {joined}, not {support}")));
    }
    for (k, c) in claimed.iter().enumerate() {
        if !is_indecomposable(c, &mode)? {
            return Err(CliError::domain("VerifyMismatch", format!("component {k} ({c}) decomposes")));
        }
    }
    let expected = ks_decompose(&support, &mode)?;
    if expected.components() != claimed.as_slice() {
        return Err(CliError::domain("VerifyMismatch", "components differ from the canonical decomposition"));
    }
    let mut o = Map::new();
    o.insert("ok".into(), Value::Bool(true));
    o.insert("components".into(), Value::from(claimed.len()));
    Ok(pretty(&Value::Object(o)))
}
