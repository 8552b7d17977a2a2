use std::fs;
use std::path::Path;

use zerocount::bayes::{
    jj_divergence_demo, posterior, prior_density, PriorKind, PriorNormalization, PriorSpec,
};
use zerocount::classical::{
    ml_estimates, simple_probability_estimates, simple_probability_upper_limit,
    sufficient_statistic, CountData,
};
use zerocount::decision::{compare_priors, risk_report, ThetaMode};
use zerocount::distributions::{nb_pmf, poisson_pmf, zpoisson_pmf, NBParams, ZPoissonParams};
use zerocount::marginal::{
    default_theta_grid, nb_marginal_numeric, nb_marginal_restricted, zpoisson_marginal, QuadConfig,
};
use zerocount::montecarlo::{
    chi_square_poisson, coverage_experiment, sample, summarize, CountModel, CoverageConfig,
    PRNG_NAME, PRNG_SOURCE,
};
use zerocount::numerics::{QuadRule, ToleranceConfig};
use zerocount::ZcdError;

use crate::report::{Cell, Report, Table};

pub const TOOL: &str = concat!("zerocount-cli ", env!("CARGO_PKG_VERSION"));

/// Sup-norm bound for the zero-inflated marginal identity.
pub const ZPOISSON_LINF_LIMIT: f64 = 1e-6;

const DEFAULT_CLS: [f64; 3] = [0.90, 0.95, 0.99];

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<ZcdError> for CliError {
    fn from(e: ZcdError) -> Self {
        let code = if e.is_improper() {
            3
        } else if e.is_numerical() {
            4
        } else {
            2
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub enum Output {
    /// One report for stdout (or `<command>.<ext>` under `--out`) and an exit code.
    Single { report: Report, code: i32 },
    /// Named files, written under `--out`.
    Files(Vec<(String, Report)>),
}

pub struct Context {
    pub command: &'static str,
    pub tol: ToleranceConfig,
}

impl Context {
    fn metadata(&self, seed: Option<u64>) -> Vec<(String, String)> {
        let mut m = vec![
            ("tool".to_string(), TOOL.to_string()),
            ("command".to_string(), self.command.to_string()),
        ];
        if let Some(seed) = seed {
            m.push(("seed".into(), seed.to_string()));
            m.push(("prng".into(), format!("{PRNG_NAME} ({PRNG_SOURCE})")));
        }
        m.push(("tolerances".into(), tolerance_string(&self.tol)));
        m
    }
}

pub fn tolerance_string(t: &ToleranceConfig) -> String {
    format!(
        "abs_tol={:?} rel_tol={:?} max_iter={} quad_rel_tol={:?}",
        t.abs_tol, t.rel_tol, t.max_iter, t.quad_rel_tol
    )
}

/// Applies `key=value` overrides to the default tolerances.
pub fn parse_tolerances(items: &[String]) -> CliResult<ToleranceConfig> {
    let mut tol = ToleranceConfig::default();
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("--tol expects key=value, got '{item}'")))?;
        let bad = || CliError::input(format!("invalid value for {key}: '{value}'"));
        let positive = |v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        match key.trim() {
            "abs_tol" => tol.abs_tol = positive(value.trim().parse().map_err(|_| bad())?)?,
            "rel_tol" => tol.rel_tol = positive(value.trim().parse().map_err(|_| bad())?)?,
            "quad_rel_tol" => tol.quad_rel_tol = positive(value.trim().parse().map_err(|_| bad())?)?,
            "max_iter" => {
                tol.max_iter = value.trim().parse().map_err(|_| bad())?;
                if tol.max_iter == 0 {
                    return Err(bad());
                }
            }
            other => {
                return Err(CliError::input(format!(
                    "unknown tolerance key '{other}' (expected abs_tol, rel_tol, max_iter, quad_rel_tol)"
                )))
            }
        }
    }
    Ok(tol)
}

/// `bl`, `jj`, `jr`, `me` or `custom:a,b`.
pub fn parse_prior(text: &str, t: f64) -> CliResult<PriorSpec> {
    let lower = text.trim().to_ascii_lowercase();
    if let Some(params) = lower.strip_prefix("custom:") {
        let parts: Vec<&str> = params.split(',').collect();
        let [a, b] = parts.as_slice() else {
            return Err(CliError::input(format!(
                "custom prior expects custom:a,b, got '{text}'"
            )));
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("invalid custom prior parameter '{s}'")))
        };
        return Ok(PriorSpec::custom(parse(a)?, parse(b)?)?);
    }
    let kind: PriorKind = lower.parse()?;
    if kind == PriorKind::Custom {
        return Err(CliError::input("custom prior expects custom:a,b"));
    }
    Ok(PriorSpec::from_kind(kind, t)?)
}

/// One nonnegative integer per line; `#` starts a comment.
pub fn read_counts_file(path: &Path) -> CliResult<Vec<u64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let mut counts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let v = body.parse::<u64>().map_err(|_| {
            CliError::input(format!(
                "{}:{}: not a nonnegative integer: '{body}'",
                path.display(),
                i + 1
            ))
        })?;
        counts.push(v);
    }
    Ok(counts)
}

fn check_cls(cls: &[f64]) -> CliResult<()> {
    match cls.iter().find(|&&c| !(c > 0.0 && c < 1.0)) {
        Some(c) => Err(CliError::input(format!(
            "credibility level must lie in (0, 1), got {c}"
        ))),
        None => Ok(()),
    }
}

const JJ_ZERO_NOTE: &str = "JJ prior with S = 0: the posterior is proportional to exp(-n t rho)/rho, \
whose integral diverges at rho -> 0, so no proper posterior, mean or upper limit exists. \
See the jj-divergence subcommand for how a cutoff epsilon drives the credibility of any finite limit to zero.";

pub struct EstimateArgs {
    pub counts: Vec<u64>,
    pub t: f64,
    pub priors: Vec<String>,
    pub cls: Vec<f64>,
    pub alpha: f64,
}

pub fn estimate(ctx: &Context, args: &EstimateArgs) -> CliResult<Output> {
    let data = CountData::new(args.counts.clone(), args.t)?;
    let cls = if args.cls.is_empty() {
        DEFAULT_CLS.to_vec()
    } else {
        args.cls.clone()
    };
    check_cls(&cls)?;
    let priors: Vec<PriorSpec> = if args.priors.is_empty() {
        [PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME]
            .into_iter()
            .map(|k| PriorSpec::from_kind(k, args.t))
            .collect::<Result<_, _>>()?
    } else {
        args.priors
            .iter()
            .map(|p| parse_prior(p, args.t))
            .collect::<CliResult<_>>()?
    };

    let (s, _) = sufficient_statistic(&data);
    let n = data.n();
    let mut report = Report::new(ctx.metadata(None));

    let ml = ml_estimates(&data);
    let mut t = Table::new(
        "ml",
        &[
            "s",
            "n",
            "t",
            "theta_hat",
            "rho_hat",
            "var_rate",
            "pathological",
        ],
    );
    t.push(vec![
        Cell::Int(s),
        Cell::Int(n),
        Cell::Num(args.t),
        Cell::Num(ml.theta_hat),
        Cell::Num(ml.rho_hat),
        Cell::Num(ml.var_rate),
        Cell::Bool(ml.pathological),
    ]);
    report.tables.push(t);

    if s == 0 {
        let est = simple_probability_estimates(n, args.t)?;
        let lim = simple_probability_upper_limit(n, args.t, args.alpha)?;
        let mut t = Table::new(
            "zero_class",
            &[
                "alpha",
                "u_theta",
                "u_rho",
                "mean_theta",
                "var_theta",
                "mean_rho",
                "var_rho",
            ],
        );
        t.push(vec![
            Cell::Num(args.alpha),
            Cell::Num(lim.u_theta),
            Cell::Num(lim.u_rho),
            Cell::Num(est.mean_theta),
            Cell::Num(est.var_theta),
            Cell::Num(est.mean_rho),
            Cell::Num(est.var_rho),
        ]);
        report.tables.push(t);
    }

    let mut post_t = Table::new(
        "posterior",
        &["prior", "a", "b", "shape", "rate", "mean_rho", "var_rho"],
    );
    let mut lim_t = Table::new("limits", &["prior", "cl", "u_theta", "u_rho", "residual"]);
    let mut risk_t = Table::new(
        "risk",
        &[
            "prior",
            "mean",
            "bias_mean",
            "risk_mean",
            "var",
            "bias_var",
            "risk_var",
        ],
    );
    let mut improper = 0;
    for prior in &priors {
        let post = match posterior(&data, prior) {
            Ok(p) => p,
            Err(ZcdError::ImproperPosterior { reason }) => {
                improper += 1;
                let note = if prior.kind == PriorKind::JJ {
                    JJ_ZERO_NOTE.to_string()
                } else {
                    format!("{}: improper posterior ({reason})", prior.label())
                };
                report.notes.push(note);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let label = prior.label();
        post_t.push(vec![
            Cell::text(&label),
            Cell::Num(prior.a),
            Cell::Num(prior.b),
            Cell::Num(post.shape()),
            Cell::Num(post.rate()),
            Cell::Num(post.mean()),
            Cell::Num(post.variance()),
        ]);
        for &cl in &cls {
            let u = post.upper_limit(cl, &ctx.tol)?;
            lim_t.push(vec![
                Cell::text(&label),
                Cell::Num(cl),
                Cell::Num(u.u_theta),
                Cell::Num(u.u_rho),
                Cell::Num(u.solver_residual),
            ]);
        }
        // Risk is computed per run, where the prior rate parameter scales by 1/t.
        let per_run = PriorSpec {
            b: prior.b / args.t,
            ..*prior
        };
        let r = risk_report(s, n, &per_run, ThetaMode::PlugIn)?;
        risk_t.push(vec![
            Cell::text(&label),
            Cell::Num(r.mean_estimate),
            Cell::Num(r.bias_mean),
            Cell::Num(r.risk_mean),
            Cell::Num(r.var_estimate),
            Cell::Num(r.bias_var),
            Cell::Num(r.risk_var),
        ]);
    }
    report.tables.extend(
        [post_t, lim_t, risk_t]
            .into_iter()
            .filter(|t| !t.rows.is_empty()),
    );
    let ranking = compare_priors(s, n)?;
    report.notes.push(format!(
        "admissibility (plug-in, counts per run): {}",
        ranking.verdict
    ));

    let code = if improper > 0 && improper == priors.len() {
        3
    } else {
        0
    };
    Ok(Output::Single { report, code })
}

fn single_table(ctx: &Context, table: Table) -> Report {
    let mut r = Report::new(ctx.metadata(None));
    r.tables.push(table);
    r
}

fn catalog(kinds: &[PriorKind]) -> CliResult<Vec<PriorSpec>> {
    Ok(kinds
        .iter()
        .map(|&k| PriorSpec::from_kind(k, 1.0))
        .collect::<Result<_, _>>()?)
}

pub fn tables(ctx: &Context) -> CliResult<Output> {
    let mut t3 = Table::new("table3", &["alpha", "cl", "u_theta"]);
    for alpha in [0.01, 0.05, 0.10, 0.37] {
        let u = simple_probability_upper_limit(1, 1.0, alpha)?;
        t3.push(vec![
            Cell::Fixed(alpha, 2),
            Cell::Fixed(1.0 - alpha, 2),
            Cell::Fixed(u.u_theta, 1),
        ]);
    }

    let mut t4 = Table::new(
        "table4",
        &[
            "prior",
            "mean",
            "bias_mean",
            "risk_mean",
            "var",
            "bias_var",
            "risk_var",
        ],
    );
    let priors = catalog(&[PriorKind::BL, PriorKind::JR, PriorKind::ME])?;
    for p in &priors {
        let r = risk_report(0, 1, p, ThetaMode::PlugIn)?;
        t4.push(vec![
            Cell::text(p.label()),
            Cell::Num(r.mean_estimate),
            Cell::Num(r.bias_mean),
            Cell::Num(r.risk_mean),
            Cell::Num(r.var_estimate),
            Cell::Num(r.bias_var),
            Cell::Num(r.risk_var),
        ]);
    }

    let mut t5 = Table::new("table5", &["cl", "BL", "JR", "ME"]);
    let data = CountData::zeros(1, 1.0)?;
    let posts = priors
        .iter()
        .map(|p| posterior(&data, p))
        .collect::<Result<Vec<_>, _>>()?;
    for cl in DEFAULT_CLS {
        let mut row = vec![Cell::Fixed(cl, 2)];
        for post in &posts {
            row.push(Cell::Fixed(post.upper_limit(cl, &ctx.tol)?.u_theta, 1));
        }
        t5.push(row);
    }

    Ok(Output::Files(vec![
        ("table3".into(), single_table(ctx, t3)),
        ("table4".into(), single_table(ctx, t4)),
        ("table5".into(), single_table(ctx, t5)),
    ]))
}

pub fn figures(ctx: &Context) -> CliResult<Output> {
    let mut f1 = Table::new("fig1", &["theta", "p_zero"]);
    for i in 0..=200 {
        let theta = i as f64 / 20.0;
        f1.push(vec![Cell::Num(theta), Cell::Num(poisson_pmf(0, theta)?)]);
    }

    let mut f2 = Table::new("fig2", &["rho", "BL", "JJ", "JR", "ME"]);
    let all = catalog(&[PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME])?;
    for i in 1..=60 {
        let rho = i as f64 / 20.0;
        let mut row = vec![Cell::Num(rho)];
        for p in &all {
            row.push(Cell::Num(prior_density(
                p,
                rho,
                PriorNormalization::ThroughUnit,
            )?));
        }
        f2.push(row);
    }

    let proper = catalog(&[PriorKind::BL, PriorKind::JR, PriorKind::ME])?;
    let data = CountData::zeros(1, 1.0)?;
    let posts = proper
        .iter()
        .map(|p| posterior(&data, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut f3 = Table::new("fig3", &["theta", "BL", "JR", "ME"]);
    for i in 1..=200 {
        let theta = i as f64 / 50.0;
        let mut row = vec![Cell::Num(theta)];
        for post in &posts {
            row.push(Cell::Num(post.density_theta(theta)?));
        }
        f3.push(row);
    }
    let mut r3 = single_table(ctx, f3);
    for (p, post) in proper.iter().zip(&posts) {
        r3.metadata
            .push((format!("mean_{}", p.label()), format!("{:?}", post.mean())));
    }

    let mut f4 = Table::new("fig4", &["cl", "BL", "JR", "ME"]);
    for i in 50..=99 {
        let cl = i as f64 / 100.0;
        let mut row = vec![Cell::Num(cl)];
        for post in &posts {
            row.push(Cell::Num(post.upper_limit(cl, &ctx.tol)?.u_theta));
        }
        f4.push(row);
    }

    let mut f5 = Table::new("fig5", &["x", "poisson", "negbin", "zpoisson"]);
    let nb = NBParams::new(4.0, 8.0)?;
    let zp = ZPoissonParams::from_mean_dispersion(4.0, 1.5)?;
    for x in 0..=60u64 {
        f5.push(vec![
            Cell::Int(x),
            Cell::Num(poisson_pmf(x, 4.0)?),
            Cell::Num(nb_pmf(x, &nb)),
            Cell::Num(zpoisson_pmf(x, &zp)),
        ]);
    }
    let mut r5 = single_table(ctx, f5);
    r5.metadata.push((
        "zpoisson_params".into(),
        format!("theta={:?} psi={:?}", zp.theta(), zp.psi()),
    ));
    r5.metadata
        .push(("negbin_params".into(), "theta=4.0 a=8.0".into()));

    Ok(Output::Files(vec![
        ("fig1".into(), single_table(ctx, f1)),
        ("fig2".into(), single_table(ctx, f2)),
        ("fig3".into(), r3),
        ("fig4".into(), single_table(ctx, f4)),
        ("fig5".into(), r5),
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalChoice {
    ZPoisson,
    Nb,
}

pub fn marginalize(
    ctx: &Context,
    model: MarginalChoice,
    x: u64,
    points: usize,
    a_min: Option<f64>,
) -> CliResult<Output> {
    if points < 2 {
        return Err(CliError::input("--points must be at least 2"));
    }
    let cfg = QuadConfig::new(ctx.tol, QuadRule::default());
    let grid = default_theta_grid(x, points);
    let (cmp, verdict, code) = match model {
        MarginalChoice::ZPoisson => {
            if a_min.is_some() {
                return Err(CliError::input("--a-min applies to the nb model only"));
            }
            let cmp = zpoisson_marginal(x, &grid, &cfg)?;
            let pass = cmp.linf_distance <= ZPOISSON_LINF_LIMIT;
            (
                cmp,
                if pass { "PASS" } else { "FAIL" },
                if pass { 0 } else { 4 },
            )
        }
        MarginalChoice::Nb => {
            let cmp = match a_min {
                Some(a) => nb_marginal_restricted(x, &grid, a, &cfg)?,
                None => nb_marginal_numeric(x, &grid, &cfg)?,
            };
            (cmp, "REPORT-ONLY", 0)
        }
    };
    let mut report = Report::new(ctx.metadata(None));
    let model_name = match model {
        MarginalChoice::ZPoisson => "zpoisson",
        MarginalChoice::Nb => "nb",
    };
    let mut summary = Table::new(
        "summary",
        &[
            "model",
            "x",
            "a_min",
            "l1_distance",
            "linf_distance",
            "norm_residual",
            "verdict",
        ],
    );
    summary.push(vec![
        Cell::text(model_name),
        Cell::Int(x),
        a_min.map_or(Cell::text(""), Cell::Num),
        Cell::Num(cmp.l1_distance),
        Cell::Num(cmp.linf_distance),
        Cell::Num(cmp.numeric_norm_residual),
        Cell::text(verdict),
    ]);
    let mut density = Table::new("density", &["theta", "numeric", "poisson_form"]);
    for ((th, num), claim) in cmp
        .theta_grid
        .iter()
        .zip(&cmp.numeric_density)
        .zip(&cmp.claimed_density)
    {
        density.push(vec![Cell::Num(*th), Cell::Num(*num), Cell::Num(*claim)]);
    }
    report.tables.extend([summary, density]);
    match model {
        MarginalChoice::ZPoisson => report.notes.push(format!(
            "psi-marginal compared with 2(2 theta)^x exp(-2 theta)/x!; PASS requires sup-norm <= {ZPOISSON_LINF_LIMIT:e}"
        )),
        MarginalChoice::Nb => report.notes.push(
            "shape-marginal compared with 2(2 theta)^x exp(-2 theta)/x!; the two are not expected to agree".into(),
        ),
    }
    Ok(Output::Single { report, code })
}

pub fn simulate(ctx: &Context, model: CountModel, draws: u64, seed: u64) -> CliResult<Output> {
    if draws == 0 {
        return Err(CliError::input("--draws must be at least 1"));
    }
    model.validate()?;
    let counts = sample(&model, draws, seed)?;
    let s = summarize(&counts);
    let (name, theta, param) = match model {
        CountModel::Poisson { theta } => ("poisson", theta, Cell::text("")),
        CountModel::ZPoisson { theta, psi } => ("zpoisson", theta, Cell::Num(psi)),
        CountModel::NB { theta, a } => ("nb", theta, Cell::Num(a)),
    };
    let mut report = Report::new(ctx.metadata(Some(seed)));
    let mut t = Table::new(
        "summary",
        &[
            "model",
            "theta",
            "shape",
            "n_draws",
            "mean",
            "variance",
            "dispersion",
        ],
    );
    t.push(vec![
        Cell::text(name),
        Cell::Num(theta),
        param,
        Cell::Int(s.n_draws),
        Cell::Num(s.sample_mean),
        Cell::Num(s.sample_variance),
        s.dispersion.map_or(Cell::text(""), Cell::Num),
    ]);
    report.tables.push(t);
    if let CountModel::Poisson { theta } = model {
        if theta > 0.0 {
            let chi = chi_square_poisson(&counts, theta, 5.0)?;
            let mut t = Table::new("goodness_of_fit", &["statistic", "dof", "p_value"]);
            t.push(vec![
                Cell::Num(chi.statistic),
                Cell::Int(chi.dof),
                Cell::Num(chi.p_value),
            ]);
            report.tables.push(t);
        }
    }
    Ok(Output::Single { report, code: 0 })
}

pub struct CoverageArgs {
    pub rho: f64,
    pub t: f64,
    pub n: u64,
    pub prior: String,
    pub cl: f64,
    pub reps: u64,
    pub seed: u64,
}

pub fn coverage(ctx: &Context, args: &CoverageArgs) -> CliResult<Output> {
    let prior = parse_prior(&args.prior, args.t)?;
    let cfg = CoverageConfig {
        true_rho: args.rho,
        t: args.t,
        n: args.n,
        prior,
        cl: args.cl,
        reps: args.reps,
        seed: args.seed,
    };
    let r = coverage_experiment(&cfg, &ctx.tol)?;
    let mut report = Report::new(ctx.metadata(Some(args.seed)));
    let mut t = Table::new(
        "coverage",
        &[
            "prior",
            "rho",
            "t",
            "n",
            "cl",
            "reps",
            "covered",
            "coverage",
            "standard_error",
        ],
    );
    t.push(vec![
        Cell::text(prior.label()),
        Cell::Num(args.rho),
        Cell::Num(args.t),
        Cell::Int(args.n),
        Cell::Num(args.cl),
        Cell::Int(r.reps),
        Cell::Int(r.covered),
        Cell::Num(r.coverage),
        Cell::Num(r.standard_error),
    ]);
    report.tables.push(t);
    Ok(Output::Single { report, code: 0 })
}

pub fn jj_divergence(ctx: &Context, epsilons: &[f64], u: f64) -> CliResult<Output> {
    let eps = if epsilons.is_empty() {
        vec![1e-2, 1e-4, 1e-6, 1e-8]
    } else {
        epsilons.to_vec()
    };
    let mut t = Table::new(
        "jj_divergence",
        &["epsilon", "u_theta", "alpha", "evidence", "evidence_approx"],
    );
    for e in eps {
        let d = jj_divergence_demo(e, u)?;
        t.push(vec![
            Cell::Num(d.epsilon),
            Cell::Num(d.u_theta),
            Cell::Num(d.alpha),
            Cell::Num(d.evidence),
            Cell::Num(d.evidence_approx),
        ]);
    }
    let mut report = single_table(ctx, t);
    report.notes.push(
        "alpha is the posterior mass above u_theta when the JJ evidence is cut at epsilon; it tends to zero as epsilon -> 0"
            .into(),
    );
    Ok(Output::Single { report, code: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prior_parsing() {
        assert_eq!(parse_prior("ME", 2.0).unwrap().b, 2.0);
        let c = parse_prior("custom:0.5,2", 1.0).unwrap();
        assert_eq!((c.a, c.b), (0.5, 2.0));
        assert_eq!(parse_prior("xx", 1.0).unwrap_err().code, 2);
        assert_eq!(parse_prior("custom:1", 1.0).unwrap_err().code, 2);
        assert_eq!(parse_prior("custom", 1.0).unwrap_err().code, 2);
    }

    #[test]
    fn tolerance_overrides() {
        let t = parse_tolerances(&["abs_tol=1e-14".into(), "max_iter=50".into()]).unwrap();
        assert_eq!(t.abs_tol, 1e-14);
        assert_eq!(t.max_iter, 50);
        assert_eq!(t.rel_tol, ToleranceConfig::default().rel_tol);
        assert!(parse_tolerances(&["foo=1".into()]).is_err());
        assert!(parse_tolerances(&["abs_tol=-1".into()]).is_err());
        assert!(parse_tolerances(&["abs_tol".into()]).is_err());
    }

    #[test]
    fn error_codes() {
        let improper: CliError = ZcdError::ImproperPosterior { reason: "x".into() }.into();
        assert_eq!(improper.code, 3);
        let numeric: CliError = ZcdError::NoConvergence {
            iterations: 1,
            lo: 0.0,
            hi: 1.0,
        }
        .into();
        assert_eq!(numeric.code, 4);
        let input: CliError = ZcdError::InvalidInput("x".into()).into();
        assert_eq!(input.code, 2);
    }
}
