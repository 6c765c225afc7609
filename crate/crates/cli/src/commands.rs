//! Argument parsing and dispatch onto the engine.

use std::fmt;
use std::path::PathBuf;

use birflow::exact_algebra::{BiRat, FieldContext, Scalar};
use birflow::integrability::{adapt_to_fibration, integrability_test, vertical_flow, Verdict};
use birflow::lie_structure::{
    builtin_catalog, classify_2dim, derived_series, is_solvable_by_series, killing_report, sl2_complete_with, spans_equal,
    structure_constants, verify_sl2_triple, AlgebraPresentation, CatalogName, Sl2Model, Sl2Verdict,
};
use birflow::normal_forms::{classify_p2, hgamma_relate, normalize_in_borel, reduce_to_tljh, ClassificationResult};
use birflow::vector_fields::{
    first_integral_check, lie_bracket, polar_divisor, polar_tangency_check, pullback, pushforward, wedge_collinear,
    BirationalMap, SurfaceModel, VectorField,
};
use birflow::Error;
use clap::{Parser as ClapParser, Subcommand, ValueEnum};

use crate::parse::{MapError, ParseError, Parser};
use crate::report::{Report, Val};

#[derive(ClapParser, Debug)]
#[command(name = "birflow", version, about = "Birational integrability and normal forms of rational vector fields")]
pub struct Cli {
    /// Surface model: p2 or f<n>.
    #[arg(long, global = true, default_value = "f0")]
    pub surface: String,
    /// Adjoin a square root, as d=<rational>.
    #[arg(long, global = true)]
    pub extension: Option<String>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
    /// Re-verify every witness, after a print/parse round trip, before printing.
    #[arg(long, global = true)]
    pub check: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest total degree accepted by the parser.
    #[arg(long, global = true, default_value_t = crate::parse::DEFAULT_DEGREE_BOUND)]
    pub degree_bound: usize,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Lie bracket [X, Y].
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Pullback of Y by a map "(f1, f2)".
    Pullback {
        #[arg(allow_hyphen_values = true)]
        y: String,
        map: String,
    },
    /// Whether X and Y are everywhere collinear.
    Collinear {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Polar divisor of X.
    Polar {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Invariance of the polar divisor.
    Tangency {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Whether F is a first integral of X.
    FirstIntegral {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Birational integrability of a vertical field.
    Integrable {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Symbolic flow of an integrable vertical field.
    Flow {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Straighten the fibration of a first integral F.
    Adapt {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Jordan normal form of a field of aut(P2).
    Classify {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Normal form of a field of the Borel algebra B_n.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Defaults to the least n with X in B_n.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Normal form in B_n followed by the reduction to T, L, J or H_gamma.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Transport H_gamma along the unimodular matrix "a,b,c,d".
    Hgamma {
        #[arg(allow_hyphen_values = true)]
        gamma: String,
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Structure constants, derived series or Killing form of a field basis.
    Algebra {
        mode: AlgebraMode,
        /// Basis fields; put `--` before a field starting with `-`.
        #[arg(required = true)]
        fields: Vec<String>,
    },
    /// Check [X, Y] = X, [Z, Y] = -Z, [X, Z] = 2Y.
    Sl2Verify {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Complete an affine pair [X, Y] = X to an sl2 triple.
    Sl2Complete {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Coefficient of x^(2 lambda) d/dy in the normalized chart.
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<String>,
    },
    /// Normal form of a two-dimensional algebra.
    Classify2 {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// A named algebra with its derived series and Killing verdicts.
    Catalog { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraMode {
    Structure,
    Derived,
    Killing,
}

/// Exit code 1 for bad input, 2 for a broken internal invariant.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {}", m),
            CliError::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::Parse(p) => p.into(),
            MapError::Engine(e) => e.into(),
        }
    }
}

fn witness_failed(what: &str) -> CliError {
    CliError::Internal(format!("witness check failed: {}", what))
}

/// Parsing and checking state for one invocation.
pub struct Session {
    pub surface: SurfaceModel,
    pub ctx: FieldContext,
    pub check: bool,
    pub bound: usize,
}

impl Session {
    pub fn new(surface: &str, extension: Option<&str>, check: bool, bound: usize) -> Result<Self, CliError> {
        let surface: SurfaceModel = surface.parse().map_err(CliError::Input)?;
        let mut ctx = FieldContext::gaussian();
        if let Some(ext) = extension {
            let d = ext.trim().strip_prefix("d=").ok_or_else(|| CliError::Input(format!("extension `{}` is not d=<rational>", ext)))?;
            let mut tmp = FieldContext::gaussian();
            let d = crate::parse::parse_scalar_in(d, &mut tmp)?;
            if d.as_rational().is_none() {
                return Err(CliError::Input(format!("extension radicand `{}` is not rational", d)));
            }
            ctx = ctx.extend_by_sqrt(&d)?.context;
        }
        Ok(Session { surface, ctx, check, bound })
    }

    fn parser(&self, text: &str) -> Result<Parser, CliError> {
        Ok(Parser::new(text, &self.ctx, self.bound)?)
    }

    pub fn field(&mut self, text: &str) -> Result<VectorField, CliError> {
        self.field_on(text, self.surface)
    }

    fn field_on(&mut self, text: &str, s: SurfaceModel) -> Result<VectorField, CliError> {
        let mut p = self.parser(text)?;
        let f = p.field(s)?;
        p.finish()?;
        self.ctx = p.context().clone();
        Ok(f)
    }

    pub fn expr(&mut self, text: &str) -> Result<BiRat, CliError> {
        let mut p = self.parser(text)?;
        let e = p.expr()?;
        p.finish()?;
        self.ctx = p.context().clone();
        Ok(e)
    }

    fn scalar(&mut self, text: &str) -> Result<Scalar, CliError> {
        self.expr(text)?.as_constant().ok_or_else(|| CliError::Input(format!("`{}` is not a constant", text)))
    }

    pub fn map(&mut self, text: &str) -> Result<BirationalMap, CliError> {
        let mut p = self.parser(text)?;
        let (f1, f2) = p.map()?;
        p.finish()?;
        self.ctx = p.context().clone();
        Ok(BirationalMap::new(self.surface, self.surface, f1, f2)?)
    }

    /// Prints a field and reads it back; under `--check` the two must agree.
    fn emit_field(&mut self, f: &VectorField) -> Result<Val, CliError> {
        let text = f.to_string();
        if self.check {
            let back = self.field_on(&text, f.surface)?;
            if back != *f {
                return Err(witness_failed(&format!("field `{}` does not survive a round trip", text)));
            }
        }
        Ok(Val::Str(text))
    }

    /// The map rebuilt from its printed form, with the known inverse verified.
    fn reparse_map(&mut self, m: &BirationalMap) -> Result<BirationalMap, CliError> {
        let text = m.to_string();
        let mut p = self.parser(&text)?;
        let (f1, f2) = p.map()?;
        p.finish()?;
        let (g1, g2) = m.inverse_components();
        BirationalMap::with_inverse(m.from, m.to, f1, f2, g1.clone(), g2.clone())
            .map_err(|_| witness_failed(&format!("map `{}` does not survive a round trip", text)))
    }

    /// Under `--check`, `pullback(from, map) == to` with the reparsed map.
    fn check_pullback(&mut self, from: &VectorField, map: &BirationalMap, to: &VectorField, what: &str) -> Result<(), CliError> {
        if self.check {
            let m = self.reparse_map(map)?;
            if pullback(from, &m)? != *to {
                return Err(witness_failed(what));
            }
        }
        Ok(())
    }
}

/// Output of one invocation: the rendered report and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a full argument vector (program name first).
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match run(&cli) {
        Ok(r) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("json"))
            } else {
                r.to_text()
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &body) {
                    return Outcome { stdout: body, stderr: format!("cannot write {}: {}\n", path.display(), e), code: 1 };
                }
            }
            Outcome { stdout: body, stderr: String::new(), code: 0 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("{}\n", e), code: e.exit_code() },
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut s = Session::new(&cli.surface, cli.extension.as_deref(), cli.check, cli.degree_bound)?;
    match &cli.cmd {
        Cmd::Bracket { x, y } => {
            let (a, b) = (s.field(x)?, s.field(y)?);
            let br = lie_bracket(&a, &b)?;
            Ok(Report::new("bracket", vec![a.to_string(), b.to_string()], "computed").with("bracket", s.emit_field(&br)?))
        }
        Cmd::Pullback { y, map } => {
            let (f, m) = (s.field(y)?, s.map(map)?);
            let p = pullback(&f, &m)?;
            if s.check && pushforward(&p, &s.reparse_map(&m)?)? != f {
                return Err(witness_failed("pushforward of the pullback"));
            }
            Ok(Report::new("pullback", vec![f.to_string(), m.to_string()], "computed").with("pullback", s.emit_field(&p)?))
        }
        Cmd::Collinear { x, y } => {
            let (a, b) = (s.field(x)?, s.field(y)?);
            if a.surface != b.surface {
                return Err(Error::SurfaceMismatch.into());
            }
            let c = wedge_collinear(&a, &b);
            Ok(Report::new("collinear", vec![a.to_string(), b.to_string()], if c { "collinear" } else { "not collinear" })
                .with("collinear", Val::Bool(c)))
        }
        Cmd::Polar { x } => {
            let f = s.field(x)?;
            let d = polar_divisor(&f);
            let comps = d.components.iter().map(|(q, m)| Val::Obj(vec![("component".into(), Val::s(q)), ("multiplicity".into(), Val::s(m))]));
            Ok(Report::new("polar", vec![f.to_string()], if d.is_empty() { "empty" } else { "nonempty" })
                .with("divisor", Val::List(comps.collect()))
                .with("degree", Val::s(d.degree())))
        }
        Cmd::Tangency { x } => {
            let f = s.field(x)?;
            let t = polar_tangency_check(&f);
            let comps = t.components.iter().map(|(q, ok)| Val::Obj(vec![("component".into(), Val::s(q)), ("invariant".into(), Val::Bool(*ok))]));
            Ok(Report::new("tangency", vec![f.to_string()], if t.tangent { "tangent" } else { "not tangent" })
                .with("tangent", Val::Bool(t.tangent))
                .with("components", Val::List(comps.collect())))
        }
        Cmd::FirstIntegral { x, f } => {
            let (v, g) = (s.field(x)?, s.expr(f)?);
            let ok = first_integral_check(&v, &g)?;
            Ok(Report::new("first-integral", vec![v.to_string(), g.to_string()], if ok { "first integral" } else { "not a first integral" })
                .with("first_integral", Val::Bool(ok)))
        }
        Cmd::Integrable { x } => integrable(&mut s, x),
        Cmd::Flow { x } => {
            let f = s.field(x)?;
            let fl = vertical_flow(&f, &s.ctx)?;
            if s.check && !(fl.is_identity_at_zero() && fl.generates(&f) && fl.satisfies_group_law()) {
                return Err(witness_failed("flow laws"));
            }
            Ok(Report::new("flow", vec![f.to_string()], "flow")
                .with("flow", Val::s(&fl))
                .with("rates", Val::scalars(&fl.rates)))
        }
        Cmd::Adapt { x, f } => {
            let (v, g) = (s.field(x)?, s.expr(f)?);
            let a = adapt_to_fibration(&v, &g)?;
            if s.check && pushforward(&v, &s.reparse_map(&a.map)?)? != a.field {
                return Err(witness_failed("adapted field"));
            }
            let mut r = Report::new("adapt", vec![v.to_string(), g.to_string()], "adapted")
                .with("map", Val::s(&a.map))
                .with("field", s.emit_field(&a.field)?);
            if a.field.is_vertical() && !a.field.is_zero() {
                let t = integrability_test(&a.field, &s.ctx)?;
                r = r.with("integrable", Val::Bool(t.is_integrable())).with("delta", Val::opt(t.delta.as_ref()));
            }
            Ok(r)
        }
        Cmd::Classify { x } => {
            let f = s.field(x)?;
            let (res, ctx) = classify_p2(&f, &s.ctx)?;
            s.ctx = ctx;
            classification(&mut s, "classify", &res)
        }
        Cmd::Normalize { x, n } => {
            let f = s.field(x)?;
            let res = borel(&f, *n, s.bound)?;
            classification(&mut s, "normalize", &res)
        }
        Cmd::Reduce { x, n } => {
            let f = s.field(x)?;
            let res = reduce_to_tljh(&borel(&f, *n, s.bound)?)?;
            classification(&mut s, "reduce", &res)
        }
        Cmd::Hgamma { gamma, matrix } => {
            let g = s.scalar(gamma)?;
            let entries: Vec<i64> = matrix
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Input(format!("matrix `{}` is not four integers a,b,c,d", matrix)))?;
            let [a, b, c, d] = entries[..] else {
                return Err(CliError::Input(format!("matrix `{}` is not four integers a,b,c,d", matrix)));
            };
            let rel = hgamma_relate(&g, [[a, b], [c, d]])?;
            if s.check {
                let m = s.reparse_map(&rel.map)?;
                let h = |g: &Scalar| VectorField::new(SurfaceModel::F(0), BiRat::x(), BiRat::y().scale(g));
                if !rel.verified || pullback(&h(&g), &m)? != h(&rel.gamma_prime).scale(&rel.scale) {
                    return Err(witness_failed("monomial transport"));
                }
            }
            Ok(Report::new("hgamma", vec![g.to_string(), matrix.clone()], if rel.verified { "related" } else { "unverified" })
                .with("gamma_prime", Val::s(&rel.gamma_prime))
                .with("scale", Val::s(&rel.scale))
                .with("map", Val::s(&rel.map)))
        }
        Cmd::Algebra { mode, fields } => algebra(&mut s, *mode, fields),
        Cmd::Sl2Verify { x, y, z } => {
            let (a, b, c) = (s.field(x)?, s.field(y)?, s.field(z)?);
            let ok = verify_sl2_triple(&a, &b, &c)?;
            Ok(Report::new("sl2-verify", vec![a.to_string(), b.to_string(), c.to_string()], if ok { "sl2 triple" } else { "not an sl2 triple" })
                .with("sl2", Val::Bool(ok)))
        }
        Cmd::Sl2Complete { x, y, c2 } => {
            let (a, b) = (s.field(x)?, s.field(y)?);
            let c2 = match c2 {
                Some(t) => s.scalar(t)?,
                None => Scalar::zero(),
            };
            sl2(&mut s, &a, &b, &c2)
        }
        Cmd::Classify2 { x, y } => {
            let (a, b) = (s.field(x)?, s.field(y)?);
            let c = classify_2dim(&a, &b)?;
            if s.check {
                let m = s.reparse_map(&c.map)?;
                let p = [pullback(&c.pair[0], &m)?, pullback(&c.pair[1], &m)?];
                if p != c.pulled || !spans_equal(&p, &c.label.model_pair(p[0].surface)) {
                    return Err(witness_failed("two-dimensional normal form"));
                }
            }
            let pair = vec![s.emit_field(&c.pair[0])?, s.emit_field(&c.pair[1])?];
            let pulled = vec![s.emit_field(&c.pulled[0])?, s.emit_field(&c.pulled[1])?];
            Ok(Report::new("classify2", vec![a.to_string(), b.to_string()], &c.label)
                .with("abelian", Val::Bool(c.label.is_abelian()))
                .with("model_surface", Val::s(c.label.model_surface()))
                .with("pair", Val::List(pair))
                .with("map", Val::s(&c.map))
                .with("pulled", Val::List(pulled)))
        }
        Cmd::Catalog { name } => catalog(&mut s, name),
    }
}

fn integrable(s: &mut Session, x: &str) -> Result<Report, CliError> {
    let f = s.field(x)?;
    let r = integrability_test(&f, &s.ctx)?;
    let verdict = match &r.verdict {
        Verdict::Integrable => "Integrable".to_string(),
        Verdict::NotIntegrable(_) => "NotIntegrable".to_string(),
    };
    let mut rep = Report::new("integrable", vec![f.to_string()], verdict);
    if let Verdict::NotIntegrable(why) = &r.verdict {
        rep = rep.with("obstruction", Val::s(why));
    }
    if let Some(q) = &r.quadratic {
        rep = rep.with("quadratic", Val::Obj(vec![("a".into(), Val::s(&q.a)), ("b".into(), Val::s(&q.b)), ("c".into(), Val::s(&q.c))]));
    }
    rep = rep.with("delta", Val::opt(r.delta.as_ref())).with("kappa", Val::opt(r.kappa.as_ref()));
    if let Some(q) = &r.q {
        rep = rep.with("Q", Val::List(q.e.iter().map(|row| Val::list(row.iter())).collect()));
    }
    if let (Some((model, nf)), Some(map)) = (&r.normal_form, &r.conjugating_map) {
        s.ctx = r.context.clone();
        s.check_pullback(&f, map, nf, "regularizing map")?;
        rep = rep.with("model", Val::s(model)).with("normal_form", s.emit_field(nf)?).with("map", Val::s(map));
    }
    Ok(rep.with("field", Val::s(&r.context)))
}

/// `normalize_in_borel` at the given degree, or at the least degree that works.
fn borel(f: &VectorField, n: Option<u32>, bound: usize) -> Result<ClassificationResult, Error> {
    if let Some(n) = n {
        return normalize_in_borel(f, n);
    }
    let mut last = Error::NotInBorel(0);
    for n in 0..=bound as u32 {
        match normalize_in_borel(f, n) {
            Err(e @ Error::NotInBorel(_)) => last = e,
            other => return other,
        }
    }
    Err(last)
}

fn classification(s: &mut Session, command: &str, r: &ClassificationResult) -> Result<Report, CliError> {
    let nf = r.normal_form();
    let mut verdict_field = nf.clone();
    if s.check {
        let m = s.reparse_map(&r.conjugator)?;
        let mut p = pullback(&r.input, &m)?;
        if let Some((_, res)) = &r.residual {
            p = pullback(&p, &s.reparse_map(res)?)?;
        }
        if p != nf || !r.verify()? {
            return Err(witness_failed("normal form conjugation"));
        }
        verdict_field = p;
    }
    let mut rep = Report::new(command, vec![r.input.to_string()], &r.label)
        .with("scale", Val::s(&r.scale))
        .with("normal_form", s.emit_field(&verdict_field)?)
        .with("conjugator", Val::s(&r.conjugator));
    if let Some(m) = &r.matrix {
        rep = rep.with("matrix", Val::matrix(m));
    }
    if let Some((label, map)) = &r.residual {
        rep = rep.with("residual", Val::Obj(vec![("label".into(), Val::s(label)), ("map".into(), Val::s(map))]));
    }
    Ok(rep)
}

fn algebra(s: &mut Session, mode: AlgebraMode, texts: &[String]) -> Result<Report, CliError> {
    let basis: Vec<VectorField> = texts.iter().map(|t| s.field(t)).collect::<Result<_, _>>()?;
    let inputs: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    let a = match structure_constants(&basis) {
        Ok(a) => a,
        Err(Error::NotClosed(w)) => {
            return Ok(Report::new("algebra", inputs, "NotClosed").with("witness", s.emit_field(&w)?));
        }
        Err(e) => return Err(e.into()),
    };
    let rep = Report::new("algebra", inputs, "closed");
    Ok(match mode {
        AlgebraMode::Structure => rep.with("dim", Val::s(a.dim())).with("constants", constants(&a)),
        AlgebraMode::Derived => describe_series(rep, &a),
        AlgebraMode::Killing => describe_killing(rep, &a)?,
    })
}

/// Nonzero `[e_i, e_j]` for `i < j`, as coordinate vectors.
fn constants(a: &AlgebraPresentation) -> Val {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = &a.constants[i][j];
            if c.iter().any(|s| !s.is_zero()) {
                out.push(Val::Obj(vec![("i".into(), Val::s(i)), ("j".into(), Val::s(j)), ("bracket".into(), Val::scalars(c))]));
            }
        }
    }
    Val::List(out)
}

fn describe_series(rep: Report, a: &AlgebraPresentation) -> Report {
    let series = derived_series(a);
    let mut rep = rep.with("dims", Val::list(series.iter().map(|t| t.dim))).with("solvable", Val::Bool(is_solvable_by_series(&series)));
    if a.basis.is_some() {
        let terms = series.iter().map(|t| Val::list(t.fields.iter().flatten()));
        rep = rep.with("terms", Val::List(terms.collect()));
    }
    rep
}

fn describe_killing(rep: Report, a: &AlgebraPresentation) -> Result<Report, CliError> {
    let k = killing_report(a)?;
    Ok(rep.with("killing", Val::matrix(&k.killing)).with("solvable", Val::Bool(k.is_solvable)).with("semisimple", Val::Bool(k.is_semisimple)))
}

fn sl2(s: &mut Session, x: &VectorField, y: &VectorField, c2: &Scalar) -> Result<Report, CliError> {
    let inputs = vec![x.to_string(), y.to_string()];
    match sl2_complete_with(x, y, c2)? {
        Sl2Verdict::Impossible(why) => Ok(Report::new("sl2-complete", inputs, "Impossible").with("reason", Val::s(why))),
        Sl2Verdict::Completed { z, model, witness } => {
            if s.check {
                let m = s.reparse_map(&witness)?;
                let pulled: Vec<VectorField> = [x, y, &z].iter().map(|v| pullback(v, &m)).collect::<Result<_, _>>()?;
                let basis: Vec<VectorField> = model.basis().iter().map(|b| b.on(x.surface)).collect();
                let lands = match model {
                    Sl2Model::G4Tilde => spans_equal(&pulled, &basis),
                    _ => pulled == basis,
                };
                if !lands || !verify_sl2_triple(x, y, &z)? {
                    return Err(witness_failed("sl2 triple"));
                }
            }
            Ok(Report::new("sl2-complete", inputs, "Completed")
                .with("z", s.emit_field(&z)?)
                .with("model", Val::s(model))
                .with("witness", Val::s(&witness)))
        }
    }
}

fn catalog(s: &mut Session, name: &str) -> Result<Report, CliError> {
    let n: CatalogName = name.parse()?;
    let a = builtin_catalog(n)?;
    let mut rep = Report::new("catalog", vec![n.to_string()], &n).with("dim", Val::s(a.dim()));
    if let Some(b) = &a.basis {
        let basis: Vec<Val> = b.iter().map(|f| s.emit_field(f)).collect::<Result<_, _>>()?;
        rep = rep.with("surface", Val::s(b[0].surface)).with("basis", Val::List(basis));
    }
    let series = derived_series(&a);
    rep = rep.with("dims", Val::list(series.iter().map(|t| t.dim)));
    describe_killing(rep, &a)
}
