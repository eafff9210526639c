//! The `jetfol` command line.
//!
//! Exit codes: 0 when the computation succeeds (or the checked property
//! holds), 1 when a mathematical check fails, 2 on unreadable or invalid
//! input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cdga::{
    ext_class_rep, is_exact, mc_check, surface_quadric, surface_rep_bridge, CdgaModel, Element, FormField, McData,
    Periods,
};
use crate::charvar::{classify_b4, normalize_orbit, orbit_equation};
use crate::error::{Error, Result};
use crate::fpgroup::{ModuleAction, Presentation};
use crate::io::{self, read_json, to_text};
use crate::jetcore::{JetDiffeo, JetMap, Rational, Scalar};
use crate::jetgroup::{chart_g2l, chart_g31, exp_jet, log_jet, LevyCoords};
use crate::obstruction::{enumerate_lifts, lift_obstruction_with, twisted_h1, Representation, Section};
use crate::random::DEFAULT_SEED;
use crate::selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartKind {
    /// `(a1, a2, a0)` for one variable at order 3, `(K, A)` at order 2,
    /// Levy coordinates otherwise.
    Auto,
    G31,
    G2l,
    Levy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SectionArg {
    Levy,
    Polynomial,
}

impl From<SectionArg> for Section {
    fn from(s: SectionArg) -> Self {
        match s {
            SectionArg::Levy => Section::Levy,
            SectionArg::Polynomial => Section::Polynomial,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jetfol", version, about = "Exact jet-group and obstruction computations")]
pub struct Cli {
    /// Coefficient field.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Rational)]
    pub field: FieldArg,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Composite `f ∘ g` of two jets.
    Compose { f: PathBuf, g: PathBuf },
    /// Group inverse of a jet.
    Invert { jet: PathBuf },
    /// Chart coordinates of a jet.
    Chart {
        jet: PathBuf,
        #[arg(long, value_enum, default_value_t = ChartKind::Auto)]
        kind: ChartKind,
    },
    /// Time-one flow of a nilpotent vector field, as a jet of the given order.
    Exp {
        vector: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Logarithm of a unipotent jet.
    Log { jet: PathBuf },
    /// Lie bracket of two polynomial vector fields.
    Bracket { x: PathBuf, y: PathBuf },
    /// Image of a word under a representation.
    Word {
        #[arg(long)]
        rep: PathBuf,
        /// Letters such as `x y x^-1`.
        #[arg(required = true)]
        letters: Vec<String>,
    },
    /// Checks every relator of a representation.
    Validate {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Twisted first cohomology.
    H1 {
        /// Builtin name or presentation file.
        #[arg(long, conflicts_with = "rep")]
        presentation: Option<String>,
        /// Character values; trivial when omitted.
        #[arg(long, requires = "presentation")]
        rho0: Option<PathBuf>,
        /// Power of the character the generators act by.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i32,
        /// Use the action of a representation on the next kernel layer.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Obstruction to lifting a representation one order up.
    Lift {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_enum, default_value_t = SectionArg::Levy)]
        section: SectionArg,
        /// Expected verdict; the exit code is 1 when it is not met.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        expect_liftable: bool,
    },
    /// Affine space of lifts of a liftable representation.
    Lifts {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Maurer–Cartan residuals.
    McCheck {
        /// Builtin (`heisenberg`, `surface:2`, `mapping_torus:3/2`, `trivial_rank2`) or model file.
        #[arg(long)]
        model: String,
        #[arg(long)]
        mc: PathBuf,
    },
    /// Representative of the extension class.
    ExtClass {
        #[arg(long)]
        model: String,
        #[arg(long)]
        mc: PathBuf,
    },
    /// Exactness of an element, or of the extension class of `--mc`.
    Exact {
        #[arg(long)]
        model: String,
        #[arg(long, conflicts_with = "mc", required_unless_present = "mc")]
        element: Option<PathBuf>,
        #[arg(long)]
        mc: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i32,
    },
    /// Surface-group representation from periods, or a liftability sweep.
    Bridge {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// `x,y,w,z` per handle, handles separated by `;`.
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid", allow_hyphen_values = true)]
        periods: Option<String>,
        /// Sweep all integer genus-1 periods in `[-N, N]` and print CSV.
        #[arg(long)]
        grid: Option<i64>,
    },
    /// Codimension-one classification at order 3.
    Classify {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        rho0: Option<PathBuf>,
        /// JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Weighted-sphere representative of an orbit.
    Normalize {
        /// Comma-separated weight -1 coordinates.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        u: String,
        /// Comma-separated weight -2 coordinates.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        v: String,
    },
    /// Runs the randomized property suite.
    Selftest {
        /// Writes a JUnit-style summary here.
        #[arg(long)]
        report_xml: Option<PathBuf>,
        /// Multiplies every sample count.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

/// What a command printed and whether its check held.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn pass(text: String) -> Self {
        Report { text, ok: true }
    }

    fn json(v: &Value, ok: bool) -> Self {
        Report { text: to_text(v), ok }
    }
}

/// Exit status for an error: 1 for failed mathematical checks, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RelatorViolated { .. } | Error::NotLiftable | Error::MaurerCartanFailure(_) | Error::NotClosed => 1,
        _ => 2,
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    match run(&cli) {
        Ok(r) => {
            let _ = out.write_all(r.text.as_bytes());
            if r.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    if cli.jobs == 0 {
        return Err(Error::InvalidParameter("--jobs must be at least 1".into()));
    }
    match cli.field {
        FieldArg::Rational => exec::<Rational>(cli),
        FieldArg::Float => exec::<f64>(cli),
    }
}

fn load_presentation(source: &str) -> Result<Presentation> {
    let path = Path::new(source);
    if path.is_file() {
        io::presentation_from_json(&read_json(path)?, "").map_err(|e| e.within(source))
    } else {
        Presentation::builtin(source)
    }
}

fn load_model<F: Scalar>(source: &str) -> Result<CdgaModel<F>> {
    let path = Path::new(source);
    if path.is_file() {
        io::model_from_json(&read_json(path)?, "")
    } else {
        io::builtin_model(source)
    }
}

fn load_rep<F: Scalar>(path: &Path) -> Result<Representation<F>> {
    io::representation_from_json(&read_json(path)?, "", path.parent())
}

fn load_jet<F: Scalar>(path: &Path) -> Result<JetMap<F>> {
    io::jet_from_json(&read_json(path)?, "")
}

fn load_diffeo<F: Scalar>(path: &Path) -> Result<JetDiffeo<F>> {
    io::diffeo_from_json(&read_json(path)?, "")
}

fn load_rho0<F: Scalar>(p: &Presentation, path: Option<&PathBuf>) -> Result<Vec<F>> {
    match path {
        Some(path) => io::rho0_from_json(p, &read_json(path)?, ""),
        None => Ok(vec![F::one(); p.num_generators()]),
    }
}

fn parse_list<F: Scalar>(s: &str, what: &str) -> Result<Vec<F>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .enumerate()
        .map(|(i, x)| F::parse_str(x).map_err(|_| Error::parse(format!("{what}[{i}]"), format!("bad number {x:?}"))))
        .collect()
}

fn parse_periods<F: Scalar>(s: &str) -> Result<Vec<Periods<F>>> {
    s.split(';')
        .enumerate()
        .map(|(i, handle)| {
            let v: Vec<F> = parse_list(handle, &format!("periods[{i}]"))?;
            <[F; 4]>::try_from(v).map_err(|_| Error::parse(format!("periods[{i}]"), "expected x,y,w,z"))
        })
        .collect()
}

fn field_json<F: Scalar>(m: &CdgaModel<F>, f: &FormField<F>) -> Value {
    if m.coefficient_rank() == 1 {
        json!(m.format(&f.rank1_form(m)))
    } else {
        json!(f.display(m).to_string())
    }
}

fn class_element<F: Scalar>(m: &CdgaModel<F>, data: &McData<F>) -> Result<(FormField<F>, i32)> {
    let e = ext_class_rep(m, data)?;
    let weight = if m.twist().is_some() { -(data.k as i32) } else { 0 };
    Ok((e, weight))
}

fn exactness_json<F: Scalar>(m: &CdgaModel<F>, e: &Element<F>, degree: usize, weight: i32) -> Result<(Value, bool)> {
    match is_exact(m, e, degree, weight) {
        Ok(x) => Ok((
            json!({
                "element": m.format(e),
                "exact": x.exact,
                "primitive": x.primitive.as_ref().map(|p| io::element_to_json(m, p)),
                "certificate": x.certificate.as_ref().map(|c| io::element_to_json(m, c)),
            }),
            true,
        )),
        Err(Error::TwistedExactnessUndecided) => Ok((
            json!({
                "element": m.format(e),
                "exact": Value::Null,
                "note": "the model does not compute twisted cohomology; only the representative is reported",
            }),
            true,
        )),
        Err(e) => Err(e),
    }
}

fn exec<F: Scalar>(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Compose { f, g } => {
            let (f, g) = (load_jet::<F>(f)?, load_jet::<F>(g)?);
            Ok(Report::json(&io::jet_to_json(&f.compose(&g)?), true))
        }
        Command::Invert { jet } => Ok(Report::json(&io::jet_to_json(load_diffeo::<F>(jet)?.invert()?.map()), true)),
        Command::Chart { jet, kind } => {
            let g = load_diffeo::<F>(jet)?;
            let kind = match kind {
                ChartKind::Auto if g.l() == 1 && g.k() == 3 => ChartKind::G31,
                ChartKind::Auto if g.k() == 2 => ChartKind::G2l,
                ChartKind::Auto => ChartKind::Levy,
                k => *k,
            };
            let v = match kind {
                ChartKind::G31 => {
                    let c = chart_g31(&g)?;
                    json!({
                        "chart": "g31",
                        "a1": io::scalar_to_json(&c.a1),
                        "a2": io::scalar_to_json(&c.a2),
                        "a0": io::scalar_to_json(&c.a0),
                    })
                }
                ChartKind::G2l => {
                    let c = chart_g2l(&g)?;
                    json!({
                        "chart": "g2l",
                        "quadratic": io::poly_to_json(&c.quadratic),
                        "linear": io::matrix_to_json(&c.linear),
                    })
                }
                _ => {
                    let mut v = io::levy_to_json(&LevyCoords::decompose(&g)?);
                    v["chart"] = json!("levy");
                    v
                }
            };
            Ok(Report::json(&v, true))
        }
        Command::Exp { vector, order } => {
            let x = io::poly_from_json::<F>(&read_json(vector)?, "")?;
            Ok(Report::json(&io::jet_to_json(exp_jet(&x, *order)?.map()), true))
        }
        Command::Log { jet } => Ok(Report::json(&io::poly_to_json(&log_jet(&load_diffeo::<F>(jet)?)?), true)),
        Command::Bracket { x, y } => {
            let x = io::poly_from_json::<F>(&read_json(x)?, "")?;
            let y = io::poly_from_json::<F>(&read_json(y)?, "")?;
            Ok(Report::json(&io::poly_to_json(&x.bracket(&y)?), true))
        }
        Command::Word { rep, letters } => {
            let r = load_rep::<F>(rep)?;
            let w = r.presentation().parse_word(letters.iter().map(String::as_str))?;
            let g = crate::fpgroup::evaluate_word(&w, r.images())?;
            Ok(Report::json(&io::jet_to_json(g.map()), true))
        }
        Command::Validate { rep } => {
            let text = format!("valid representation\n{}", to_text(&io::representation_to_json(&load_rep::<F>(rep)?)));
            Ok(Report::pass(text))
        }
        Command::H1 {
            presentation,
            rho0,
            weight,
            rep,
        } => {
            let (p, act) = match (rep, presentation) {
                (Some(rep), _) => {
                    let r = load_rep::<F>(rep)?;
                    let act = ModuleAction::for_representation(r.images(), r.k() + 1)?;
                    (r.presentation().clone(), act)
                }
                (None, Some(source)) => {
                    let p = load_presentation(source)?;
                    let values = load_rho0::<F>(&p, rho0.as_ref())?;
                    crate::charvar::check_character(&p, &values)?;
                    let act = ModuleAction::scalars(&values.iter().map(|v| v.pow(*weight)).collect::<Vec<_>>())?;
                    (p, act)
                }
                (None, None) => return Err(Error::parse("h1", "give --presentation or --rep")),
            };
            let h = twisted_h1(&p, &act)?;
            Ok(Report::json(
                &json!({"module_dim": act.dim(), "z1": h.z1_dim, "b1": h.b1_dim, "h1": h.h1_dim}),
                true,
            ))
        }
        Command::Lift {
            rep,
            section,
            expect_liftable,
        } => {
            let r = load_rep::<F>(rep)?;
            let report = lift_obstruction_with(&r, (*section).into())?;
            let v = json!({
                "verdict": if report.liftable { "liftable" } else { "not liftable" },
                "liftable": report.liftable,
                "defects": report.defects.iter().map(io::poly_to_json).collect::<Vec<_>>(),
                "defect_vector": report.defect_vector.iter().map(io::scalar_to_json).collect::<Vec<_>>(),
                "certificate": report.certificate.as_ref().map(|c| c.iter().map(io::scalar_to_json).collect::<Vec<_>>()),
                "witness": report.witness.as_ref().map(io::representation_to_json),
            });
            Ok(Report::json(&v, report.liftable == *expect_liftable))
        }
        Command::Lifts { rep } => {
            let space = enumerate_lifts(&load_rep::<F>(rep)?)?;
            let basis = |b: &[Vec<F>]| -> Vec<Value> {
                b.iter().map(|v| json!(v.iter().map(io::scalar_to_json).collect::<Vec<_>>())).collect()
            };
            let v = json!({
                "z1_dim": space.z1_basis.len(),
                "b1_dim": space.b1_basis.len(),
                "h1_dim": space.h1_dim,
                "z1_basis": basis(&space.z1_basis),
                "b1_basis": basis(&space.b1_basis),
                "base_lift": io::representation_to_json(&space.base_lift),
            });
            Ok(Report::json(&v, true))
        }
        Command::McCheck { model, mc } => {
            let m = load_model::<F>(model)?;
            let data = io::mc_from_json(&m, &read_json(mc)?, "")?;
            let residuals = mc_check(&m, &data)?;
            let ok = residuals.iter().all(FormField::is_zero);
            let v = json!({
                "model": m.name(),
                "k": data.k,
                "residuals": residuals.iter().map(|r| field_json(&m, r)).collect::<Vec<_>>(),
                "maurer_cartan": ok,
            });
            Ok(Report::json(&v, ok))
        }
        Command::ExtClass { model, mc } => {
            let m = load_model::<F>(model)?;
            let data = io::mc_from_json(&m, &read_json(mc)?, "")?;
            let (e, weight) = class_element(&m, &data)?;
            let mut v = json!({
                "model": m.name(),
                "k": data.k,
                "class": field_json(&m, &e),
                "degree": 2,
                "weight": weight,
            });
            if m.coefficient_rank() == 1 {
                v["element"] = io::element_to_json(&m, &e.rank1_form(&m));
            } else {
                v["field"] = io::field_to_json(&m, &e);
            }
            Ok(Report::json(&v, true))
        }
        Command::Exact {
            model,
            element,
            mc,
            degree,
            weight,
        } => {
            let m = load_model::<F>(model)?;
            let (e, degree, weight) = match (element, mc) {
                (Some(path), _) => (io::element_from_json(&m, &read_json(path)?, "")?, *degree, *weight),
                (None, Some(path)) => {
                    let data = io::mc_from_json(&m, &read_json(path)?, "")?;
                    if m.coefficient_rank() != 1 {
                        let e = ext_class_rep(&m, &data)?;
                        let exact = crate::cdga::is_exact_field(&m, &e, 2)?;
                        return Ok(Report::json(&json!({"class": field_json(&m, &e), "exact": exact}), true));
                    }
                    let (e, w) = class_element(&m, &data)?;
                    (e.rank1_form(&m), 2, w)
                }
                (None, None) => return Err(Error::parse("exact", "give --element or --mc")),
            };
            let (v, ok) = exactness_json(&m, &e, degree, weight)?;
            Ok(Report::json(&v, ok))
        }
        Command::Bridge { genus, periods, grid } => match (periods, grid) {
            (Some(p), _) => {
                let periods = parse_periods::<F>(p)?;
                let r = surface_rep_bridge(*genus, &periods)?;
                let report = lift_obstruction_with(&r, Section::Levy)?;
                let v = json!({
                    "quadric": io::scalar_to_json(&surface_quadric(&periods)),
                    "liftable": report.liftable,
                    "defect_vector": report.defect_vector.iter().map(io::scalar_to_json).collect::<Vec<_>>(),
                    "representation": io::representation_to_json(&r),
                });
                Ok(Report::json(&v, true))
            }
            (None, Some(n)) => sweep::<F>(*n, cli.jobs).map(Report::pass),
            (None, None) => Err(Error::parse("bridge", "give --periods or --grid")),
        },
        Command::Classify {
            presentation,
            rho0,
            json: as_json,
        } => {
            let p = load_presentation(presentation)?;
            let values = load_rho0::<F>(&p, rho0.as_ref())?;
            let report = classify_b4(&p, &values)?;
            Ok(if *as_json {
                Report::json(&report.to_json(), true)
            } else {
                Report::pass(report.table())
            })
        }
        Command::Normalize { u, v } => {
            if F::FIELD == crate::jetcore::FieldKind::Float {
                let (u, v): (Vec<f64>, Vec<f64>) = (parse_list(u, "u")?, parse_list(v, "v")?);
                let r = normalize_orbit(&u, &v)?;
                Ok(Report::json(&json!({"s": r.s, "u": r.u, "v": r.v}), true))
            } else {
                let (u, v): (Vec<F>, Vec<F>) = (parse_list(u, "u")?, parse_list(v, "v")?);
                let [a, b, c] = orbit_equation(&u, &v)?;
                Ok(Report::json(
                    &json!({
                        "equation": "c2*s^2 + c1*s + c0 = 0, s > 0; representative (sqrt(s)*u, s*v)",
                        "c2": io::scalar_to_json(&a),
                        "c1": io::scalar_to_json(&b),
                        "c0": io::scalar_to_json(&c),
                    }),
                    true,
                ))
            }
        }
        Command::Selftest { report_xml, scale } => {
            if scale.is_nan() || *scale <= 0.0 {
                return Err(Error::InvalidParameter("--scale must be positive".into()));
            }
            let outcomes = selftest::run(cli.seed, *scale);
            let mut text = String::new();
            for o in &outcomes {
                let (tag, detail) = match &o.result {
                    Ok(d) => ("PASS", d),
                    Err(d) => ("FAIL", d),
                };
                text.push_str(&format!("{tag} {:<18} {detail}\n", o.name));
            }
            if let Some(path) = report_xml {
                std::fs::write(path, selftest::junit_xml(&outcomes)).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?;
            }
            Ok(Report {
                text,
                ok: outcomes.iter().all(selftest::Outcome::passed),
            })
        }
    }
}

/// Liftability of every genus-one integer period tuple in `[-n, n]⁴`.
fn sweep<F: Scalar>(n: i64, jobs: usize) -> Result<String> {
    if n < 0 {
        return Err(Error::InvalidParameter("--grid must be non-negative".into()));
    }
    let width = (2 * n + 1) as usize;
    let tuples: Vec<[i64; 4]> = (0..width.pow(4))
        .map(|i| [i / width.pow(3), i / width.pow(2), i / width, i].map(|d| (d % width) as i64 - n))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rows: Vec<([i64; 4], String)> = pool.install(|| {
        tuples
            .par_iter()
            .map(|t| {
                let periods = [t.map(F::from_i64)];
                let r = surface_rep_bridge(1, &periods)?;
                let report = lift_obstruction_with(&r, Section::Levy)?;
                let quad = surface_quadric(&periods);
                Ok((
                    *t,
                    format!(
                        "{},{},{},{},{},{},{}",
                        t[0],
                        t[1],
                        t[2],
                        t[3],
                        quad.to_canonical(),
                        report.liftable,
                        report.defect_vector[0].to_canonical()
                    ),
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    rows.sort_by_key(|r| r.0);
    let mut out = String::from("x,y,w,z,quadric,liftable,defect\n");
    for (_, line) in rows {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
