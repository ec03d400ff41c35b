//! Command dispatch for the `folcalc` tool.

use serde_json::json;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry};
use crate::dsl::{Session, Value};
use crate::error::AlgebraError;
use crate::foliation::FoliationForm;
use crate::ideal::rational_points;
use crate::poly::default_names;
use crate::singmaps::{self, PolyMap, Target};
use crate::unfolding::{self, GradedSlices};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Integrability, descent and saturation
    Check,
    /// Singular ideal and its dimension
    Sing,
    /// Graded unfolding table
    Unfold,
    /// Camacho–Lins Neto regularity
    Regularity,
    /// Rank of the form
    Rank,
    /// Graded hypotheses for stability of cones
    Stabcones,
    /// Graded hypotheses for infinitesimal determinacy
    Determinacy,
    /// Classify points of the form
    Classify,
    /// Tangency scheme of a map and a foliation on the target
    Tangency,
    /// Critical sets of a map
    Critical,
    /// Genericity of a map to projective space
    GenericMap,
    /// Catalog entry by name
    Catalog,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Sing => "sing",
            Command::Unfold => "unfold",
            Command::Regularity => "regularity",
            Command::Rank => "rank",
            Command::Stabcones => "stabcones",
            Command::Determinacy => "determinacy",
            Command::Classify => "classify",
            Command::Tangency => "tangency",
            Command::Critical => "critical",
            Command::GenericMap => "generic-map",
            Command::Catalog => "catalog",
        }
    }

    /// Inverse of [`Command::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        use clap::ValueEnum;
        Command::value_variants().iter().copied().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub form: Option<String>,
    pub map: Option<String>,
    /// Inclusive range of total degrees.
    pub degrees: Option<(i64, i64)>,
    pub k: Vec<usize>,
    pub points: Vec<Vec<Q>>,
    pub bound: Option<i64>,
    /// Report the projective degree of the form; requires descent.
    pub projective_degree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] AlgebraError),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 1,
            CommandError::Math(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CommandError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CommandError::Usage(msg.into()))
}

struct Subject {
    label: String,
    form: FoliationForm,
    names: Vec<String>,
}

fn catalog_entries(name: &str) -> Result<Vec<CatalogEntry>> {
    let (base, index) = match name.split_once('#') {
        Some((b, i)) => match i.parse::<usize>() {
            Ok(i) => (b, Some(i)),
            Err(_) => return usage(format!("bad entry index in `{name}`")),
        },
        None => (name, None),
    };
    let mut entries = catalog::lookup(base).map_err(|e| CommandError::Usage(e.to_string()))?;
    match index {
        None => Ok(entries),
        Some(i) if i < entries.len() => Ok(vec![entries.swap_remove(i)]),
        Some(i) => usage(format!("`{base}` has {} entries, no #{i}", entries.len())),
    }
}

fn resolve_form(session: &Session, name: Option<&str>) -> Result<Subject> {
    let binding = match name {
        Some(n) => session.bindings().iter().find(|b| b.name == n),
        None => session.last_where(|v| matches!(v, Value::Form(w) if w.degree() == 1)),
    };
    if let Some(b) = binding {
        return match &b.value {
            Value::Form(w) if w.degree() == 1 => Ok(Subject {
                label: b.name.clone(),
                form: FoliationForm::new(w.clone())?,
                names: session.vars().to_vec(),
            }),
            v => usage(format!("`{}` is a {}, not a 1-form", b.name, v.kind())),
        };
    }
    let Some(name) = name else {
        return usage("no 1-form in the input; bind one or pass --form");
    };
    let mut entries = catalog_entries(name)?;
    if entries.len() != 1 {
        return usage(format!("`{name}` names {} forms; select one with #index", entries.len()));
    }
    let e = entries.remove(0);
    Ok(Subject { label: e.name, names: default_names(e.nvars), form: e.form })
}

fn resolve_map(session: &Session, name: Option<&str>) -> Result<(String, PolyMap)> {
    let is_map = |v: &Value| matches!(v, Value::Tuple(_) | Value::Projective(_));
    let binding = match name {
        Some(n) => match session.bindings().iter().find(|b| b.name == n) {
            Some(b) => b,
            None => return usage(format!("unknown map `{n}`")),
        },
        None => match session.last_where(is_map) {
            Some(b) => b,
            None => return usage("no map in the input; bind one or pass --map"),
        },
    };
    let n = session.nvars();
    let map = match &binding.value {
        Value::Tuple(c) => PolyMap::affine(n, c.clone())?,
        Value::Projective(c) => PolyMap::projective(n, c.clone())?,
        v => return usage(format!("`{}` is a {}, not a map", binding.name, v.kind())),
    };
    Ok((binding.name.clone(), map))
}

fn header(report: &mut crate::report::Report, s: &Subject, opts: &Options) -> Result<()> {
    report.set("form", &s.label);
    report.set("variables", &s.names);
    report.set("omega", s.form.omega().render(&s.names));
    report.set("total_degree", s.form.total_degree());
    if opts.projective_degree {
        match s.form.projective_degree() {
            Some(d) => report.set("projective_degree", d),
            None => {
                return Err(AlgebraError::Precondition("the form does not descend to projective space".into()).into())
            }
        };
    }
    Ok(())
}

fn map_header(report: &mut crate::report::Report, label: &str, map: &PolyMap, names: &[String]) {
    report.set("map", label);
    report.set("variables", names);
    let target = match map.target() {
        Target::Affine => "affine",
        Target::Projective => "projective",
    };
    report.set("target", target);
    report.set("components", map.components().iter().map(|c| c.render(names)).collect::<Vec<_>>());
    report.set("source_dim", map.source_dim());
    report.set("target_dim", map.target_dim());
}

fn total_degree(s: &Subject) -> Result<i64> {
    match s.form.total_degree() {
        Some(k) => Ok(k as i64),
        None => Err(AlgebraError::Precondition("the form is not homogeneous".into()).into()),
    }
}

/// Runs one command against a parsed session.
pub fn run(command: Command, session: &Session, opts: &Options) -> Result<crate::report::Report> {
    let mut r = crate::report::Report::new(command.name());
    match command {
        Command::Check => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let obstruction = s.form.integrability_obstruction();
            r.set("integrable", obstruction.is_zero());
            r.set("witness", (!obstruction.is_zero()).then(|| obstruction.render(&s.names)));
            r.set("homogeneous", s.form.is_homogeneous());
            r.set("descends", s.form.descends_to_projective());
            r.set("saturated", s.form.is_saturated());
            r.set("common_factor", s.form.saturate().0.render(&s.names));
        }
        Command::Sing => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let n = s.form.nvars() as i64;
            let sing = s.form.singular_ideal();
            let dim = sing.krull_dimension();
            r.set("ideal", sing.render_basis(&s.names));
            r.set("dim", dim);
            r.set("codim", if dim < 0 { json!(null) } else { json!(n - dim) });
            r.set("saturated", s.form.is_saturated());
            let d = s.form.omega().exterior_derivative();
            let dsing = crate::ideal::Ideal::new(s.form.nvars(), d.coefficients().cloned().collect())?;
            r.set("domega_ideal", dsing.render_basis(&s.names));
            r.set("domega_dim", dsing.krull_dimension());
        }
        Command::Unfold => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let g = GradedSlices::new(&s.form)?;
            let k = g.total_degree();
            let (a, b) = opts.degrees.unwrap_or((0, k + 3));
            let rows = (a..=b).map(|ell| g.report(ell)).collect::<std::result::Result<Vec<_>, _>>()?;
            r.set("slices", rows);
        }
        Command::Regularity => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let rep = unfolding::is_regular(&s.form)?;
            r.set("regular", rep.regular);
            r.set("dim_H1", rep.table);
        }
        Command::Rank => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            r.set("rank", unfolding::rank(&s.form)?);
        }
        Command::Stabcones | Command::Determinacy => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let bound = opts.bound.unwrap_or(unfolding::default_bound(total_degree(&s)?));
            let check = if command == Command::Stabcones {
                unfolding::check_stabcones_hypotheses(&s.form, bound)?
            } else {
                unfolding::infinitesimal_determinacy(&s.form, bound)?
            };
            r.set("holds", check.holds);
            r.set("bound", check.bound);
            r.set("witness", check.witness.map(|(space, ell)| json!({"space": space, "degree": ell})));
            r.set("dim_K", check.dim_k);
            r.set("dim_Unf", check.dim_unf);
        }
        Command::Classify => {
            let s = resolve_form(session, opts.form.as_deref())?;
            header(&mut r, &s, opts)?;
            let points = if opts.points.is_empty() {
                match rational_points(&s.form.singular_ideal()) {
                    Some(p) => p,
                    None => {
                        return Err(AlgebraError::Precondition(
                            "singular set is not a finite set of rational points; pass --point".into(),
                        )
                        .into())
                    }
                }
            } else {
                opts.points.clone()
            };
            let mut verdicts = Vec::new();
            for p in &points {
                let v = singmaps::classify_point(&s.form, p)?;
                let mut entry = serde_json::to_value(&v).expect("serializable");
                entry["multiplicity"] = json!(s.form.multiplicity_at(p)?);
                verdicts.push(entry);
            }
            r.set("verdicts", verdicts);
        }
        Command::Tangency => {
            let (label, map) = resolve_map(session, opts.map.as_deref())?;
            map_header(&mut r, &label, &map, session.vars());
            let g = match &opts.form {
                Some(name) => resolve_form(session, Some(name))?,
                None => return usage("tangency needs --form naming the foliation on the target"),
            };
            r.set("foliation", &g.label);
            r.set("foliation_omega", g.form.omega().render(&g.names));
            let (pulled, tang) = singmaps::tangency_ideal(&map, &g.form)?;
            let rep = singmaps::summarize_tangency(&pulled, &tang)?;
            r.set("pullback", pulled.omega().render(session.vars()));
            r.set("tangency_ideal", tang.render_basis(session.vars()));
            r.set("dim_tang", rep.dim_tang);
            r.set("count_with_multiplicity", rep.count_with_multiplicity.to_string());
            r.set("points", rep.rational_points);
            r.set("unclassified", rep.unclassified);
            r.set("finite_morse", rep.finite_morse);
        }
        Command::Critical => {
            let (label, map) = resolve_map(session, opts.map.as_deref())?;
            map_header(&mut r, &label, &map, session.vars());
            let ks: Vec<usize> = if opts.k.is_empty() {
                (0..map.source_dim().min(map.target_dim())).collect()
            } else {
                opts.k.clone()
            };
            let mut rows = Vec::new();
            for k in ks {
                let ideal = singmaps::critical_ideal(&map, k)?;
                let rep = singmaps::expected_dimension_report(&map, k, singmaps::source_dimension(&map, &ideal));
                rows.push(json!({
                    "k": k,
                    "ideal": ideal.render_basis(session.vars()),
                    "dim": rep.dim,
                    "bounds": [rep.bounds.0, rep.bounds.1],
                    "holds": rep.holds,
                }));
            }
            r.set("critical_sets", rows);
        }
        Command::GenericMap => {
            let (label, map) = resolve_map(session, opts.map.as_deref())?;
            map_header(&mut r, &label, &map, session.vars());
            let rep = singmaps::check_generic_map(&map)?;
            r.set("generic", rep.generic);
            r.set("base_dim", rep.base_dim);
        }
        Command::Catalog => {
            let names: Vec<String> = match &opts.form {
                Some(n) => vec![n.clone()],
                None => catalog::FIXED_NAMES.iter().map(|s| s.to_string()).collect(),
            };
            let mut entries = Vec::new();
            for name in names {
                for e in catalog_entries(&name)? {
                    let mut v = serde_json::to_value(e.summary()).expect("serializable");
                    v["omega"] = json!(e.form.omega().render(&default_names(e.nvars)));
                    entries.push(v);
                }
            }
            r.set("entries", entries);
        }
    }
    Ok(r)
}

/// Parses `A..B` (inclusive).
pub fn parse_degrees(text: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = text.split_once("..").ok_or_else(|| format!("expected A..B, got `{text}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad degree `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad degree `{b}`"))?;
    if a > b || a < 0 {
        return Err(format!("empty or negative degree range `{text}`"));
    }
    Ok((a, b))
}
