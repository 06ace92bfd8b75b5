use std::fs;
use std::path::{Path, PathBuf};

use eup_core::entropy_bounds::{self, measurement_entropy, GAP_VIOLATION};
use eup_core::group_fourier::{build_group, delta_state, irreps, verify_group_case};
use eup_core::interpolation::{endpoint_check, entropy_limit_check, rt_check};
use eup_core::measurement::{random_measurement_with, random_pure_state_with, rng};
use eup_core::naimark::{self, dilate};
use eup_core::{
    bound_single, bound_state_dependent, bound_state_independent, minimize_gap, mixed_bound_check,
    outcome_distribution, overlap_matrix, Measurement, MeasurementKind, PureState,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::format::{self, FormatError, State};
use crate::report::{Field, Report};

/// Residual ceiling for dilation axioms; validation tolerances are fixed.
const DILATION_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] eup_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CommandResult = Result<Report, CommandError>;

pub struct Context {
    pub command: String,
    /// Reporting tolerance for pass/fail flags.
    pub tol: f64,
}

impl Context {
    fn report(&self) -> Report {
        Report::new(self.command.clone())
    }
}

fn read_input(report: &mut Report, path: &Path) -> Result<String, CommandError> {
    let text = fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.to_path_buf(), source })?;
    report.input(path, text.as_bytes());
    Ok(text)
}

fn measurement_input(report: &mut Report, path: &Path) -> Result<Measurement, CommandError> {
    let text = read_input(report, path)?;
    Ok(format::parse_measurement(&text, path)?)
}

fn state_input(report: &mut Report, path: &Path) -> Result<State, CommandError> {
    let text = read_input(report, path)?;
    Ok(format::parse_state(&text, path)?)
}

fn pure_input(report: &mut Report, path: &Path) -> Result<PureState, CommandError> {
    match state_input(report, path)? {
        State::Pure(p) => Ok(p),
        State::Mixed(_) => Err(CommandError::Usage(format!("{}: a pure state is required", path.display()))),
    }
}

fn kind_name(m: &Measurement) -> &'static str {
    if m.is_projective() {
        "projective"
    } else {
        "povm"
    }
}

fn same_dim(a: &Measurement, b: usize, what: &str) -> Result<(), CommandError> {
    if a.dim() != b {
        return Err(CommandError::Usage(format!("dimension mismatch: measurement has {}, {what} has {b}", a.dim())));
    }
    Ok(())
}

pub fn validate(ctx: &Context, file: &Path) -> CommandResult {
    let mut r = ctx.report();
    let text = read_input(&mut r, file)?;
    if format::is_measurement_document(&text) {
        let m = format::parse_measurement(&text, file)?;
        let completeness = eup_core::numerics::sum(m.operators())
            .max_abs_diff(&eup_core::numerics::Matrix::identity(m.dim()));
        r.field("object", Field::Text("measurement".into()))
            .field("dim", Field::Count(m.dim() as u64))
            .field("outcomes", Field::Count(m.len() as u64))
            .field("kind", Field::Text(kind_name(&m).into()))
            .field("completeness_residual", Field::Residual(completeness))
            .field("zero_outcomes", Field::Index(m.zero_outcomes()));
        if m.is_projective() {
            r.field("orthogonality_residual", Field::Residual(m.orthogonality_residual()));
        }
    } else {
        let s = format::parse_state(&text, file)?;
        let kind = match s {
            State::Pure(_) => "pure",
            State::Mixed(_) => "mixed",
        };
        r.field("object", Field::Text("state".into()))
            .field("dim", Field::Count(s.dim() as u64))
            .field("kind", Field::Text(kind.into()));
    }
    Ok(r)
}

pub fn entropy(ctx: &Context, meas: &Path, state: &Path) -> CommandResult {
    let mut r = ctx.report();
    let m = measurement_input(&mut r, meas)?;
    let s = state_input(&mut r, state)?;
    same_dim(&m, s.dim(), "state")?;
    let dist = match &s {
        State::Pure(p) => outcome_distribution(&m, p)?,
        State::Mixed(rho) => outcome_distribution(&m, rho)?,
    };
    let single = bound_single(&m);
    let h = entropy_bounds::entropy(&dist);
    r.field("probabilities", Field::Reals(dist.probabilities().to_vec()))
        .field("entropy_bits", Field::Bits(h))
        .field("single_bound_bits", Field::Bits(single.bound_bits))
        .check("single_bound_holds", h >= single.bound_bits - ctx.tol);
    Ok(r)
}

pub fn bound(ctx: &Context, a: &Path, b: Option<&Path>, state: Option<&Path>, single: bool) -> CommandResult {
    let mut r = ctx.report();
    let x = measurement_input(&mut r, a)?;
    let y = match b {
        Some(path) => Some(measurement_input(&mut r, path)?),
        None if single => None,
        None => return Err(CommandError::Usage("--b is required unless --single is given".into())),
    };
    let s = match state {
        Some(path) => Some(state_input(&mut r, path)?),
        None => None,
    };
    if let Some(y) = &y {
        same_dim(&x, y.dim(), "--b")?;
    }
    if let Some(s) = &s {
        same_dim(&x, s.dim(), "state")?;
    }

    if single {
        let rep = bound_single(&x);
        r.field("theorem", Field::Text(rep.theorem.to_string()))
            .field("bound_bits", Field::Bits(rep.bound_bits))
            .field("argmax", Field::Index(vec![rep.argmax.0, rep.argmax.1]))
            .field("max_norm", Field::Real(rep.ratio_at_argmax));
        if let Some(s) = &s {
            let h = match s {
                State::Pure(p) => measurement_entropy(&x, p)?,
                State::Mixed(rho) => measurement_entropy(&x, rho)?,
            };
            r.field("entropy_bits", Field::Bits(h))
                .field("slack_bits", Field::Bits(h - rep.bound_bits))
                .check("bound_holds", h >= rep.bound_bits - ctx.tol);
        }
        return Ok(r);
    }

    let y = y.expect("checked above");
    let ind = bound_state_independent(&x, &y)?;
    match &s {
        None => {
            r.field("theorem", Field::Text(ind.theorem.to_string()))
                .field("bound_bits", Field::Bits(ind.bound_bits))
                .field("argmax", Field::Index(vec![ind.argmax.0, ind.argmax.1]))
                .field("max_norm", Field::Real(ind.ratio_at_argmax));
        }
        Some(State::Pure(psi)) => {
            let dep = bound_state_dependent(&x, &y, psi)?;
            let hx = measurement_entropy(&x, psi)?;
            let hy = measurement_entropy(&y, psi)?;
            r.field("theorem", Field::Text(dep.theorem.to_string()))
                .field("bound_bits", Field::Bits(dep.bound_bits))
                .field("argmax", Field::Index(vec![dep.argmax.0, dep.argmax.1]))
                .field("ratio", Field::Real(dep.ratio_at_argmax))
                .field("admissible_pairs", Field::Count(dep.admissible_pairs as u64))
                .field("entropy_a_bits", Field::Bits(hx))
                .field("entropy_b_bits", Field::Bits(hy))
                .field("entropy_sum_bits", Field::Bits(hx + hy))
                .field("slack_bits", Field::Bits(hx + hy - dep.bound_bits))
                .field("state_independent_theorem", Field::Text(ind.theorem.to_string()))
                .field("state_independent_bits", Field::Bits(ind.bound_bits))
                .check("bound_holds", hx + hy >= dep.bound_bits - ctx.tol)
                .check("dominates_state_independent", dep.bound_bits >= ind.bound_bits - ctx.tol);
        }
        Some(State::Mixed(rho)) => {
            let hx = measurement_entropy(&x, rho)?;
            let hy = measurement_entropy(&y, rho)?;
            r.field("theorem", Field::Text(ind.theorem.to_string()))
                .field("bound_bits", Field::Bits(ind.bound_bits))
                .field("argmax", Field::Index(vec![ind.argmax.0, ind.argmax.1]))
                .field("entropy_a_bits", Field::Bits(hx))
                .field("entropy_b_bits", Field::Bits(hy))
                .field("entropy_sum_bits", Field::Bits(hx + hy))
                .field("slack_bits", Field::Bits(hx + hy - ind.bound_bits))
                .check("bound_holds", hx + hy >= ind.bound_bits - ctx.tol);
            if rho.decomposition().is_some() {
                let mixed = mixed_bound_check(&x, &y, rho)?;
                r.field("weighted_pure_sum_bits", Field::Bits(mixed.weighted_pure_sum_bits))
                    .field("concavity_slack_bits", Field::Bits(mixed.concavity_slack))
                    .check("concavity_chain_holds", mixed.holds(ctx.tol));
            }
        }
    }
    Ok(r)
}

pub fn dilate_file(ctx: &Context, input: &Path, output: &Path) -> CommandResult {
    let mut r = ctx.report();
    let text = read_input(&mut r, input)?;
    let doc = format::parse_measurement_document(&text, input)?;
    let y = format::measurement_from_document(&doc, input)?;
    let dil = dilate(&y)?;
    let res = dil.residuals();
    let out_doc = format::measurement_document(
        dil.measurement(),
        doc.labels.clone(),
        Some(format!("dilation of {}", input.display())),
    );
    format::write_measurement(output, &out_doc)?;
    // Confirm the written file reads back as a projective measurement.
    let back = format::load_measurement(output)?;
    r.field("dim", Field::Count(dil.dim() as u64))
        .field("outcomes", Field::Count(y.len() as u64))
        .field("ambient_dim", Field::Count(dil.ambient_dim() as u64))
        .field("projector_ranks", Field::Reals(naimark::projector_ranks(&dil)))
        .field("projector_residual", Field::Residual(res.projector))
        .field("completeness_residual", Field::Residual(res.completeness))
        .field("block_residual", Field::Residual(res.block))
        .field("output", Field::Text(output.display().to_string()))
        .check("dilation_axioms", res.max() <= DILATION_TOL)
        .check("output_is_projective", back.is_projective());
    Ok(r)
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    slack: f64,
    dominance: f64,
    theorem_consistent: bool,
}

pub fn verify(
    ctx: &Context,
    dim: usize,
    outcomes: (usize, usize),
    kinds: (MeasurementKind, MeasurementKind),
    trials: usize,
    seed: u64,
) -> CommandResult {
    let mut r = ctx.report();
    r.seed(seed);
    for (n, k) in [(outcomes.0, kinds.0), (outcomes.1, kinds.1)] {
        if dim == 0 || n == 0 || (k == MeasurementKind::Projective && n > dim) {
            return Err(CommandError::Usage(format!("cannot draw {k:?} measurement with {n} outcomes in dimension {dim}")));
        }
    }
    if trials == 0 {
        return Err(CommandError::Usage("--trials must be positive".into()));
    }
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Trial, eup_core::Error> {
            let mut g = rng(seed.wrapping_add(t as u64));
            let x = random_measurement_with(&mut g, dim, outcomes.0, kinds.0)?;
            let y = random_measurement_with(&mut g, dim, outcomes.1, kinds.1)?;
            let psi = random_pure_state_with(&mut g, dim);
            let dep = bound_state_dependent(&x, &y, &psi)?;
            let ind = bound_state_independent(&x, &y)?;
            let sum = measurement_entropy(&x, &psi)? + measurement_entropy(&y, &psi)?;
            let expected = match (x.is_projective(), y.is_projective()) {
                (true, true) => "thm1",
                (false, false) => "thm4",
                _ => "thm3",
            };
            Ok(Trial {
                slack: sum - dep.bound_bits,
                dominance: dep.bound_bits - ind.bound_bits,
                theorem_consistent: dep.theorem.as_str() == expected,
            })
        })
        .collect::<Result<_, _>>()?;

    let (worst, min_slack) = results
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, t)| if t.slack < acc.1 { (i, t.slack) } else { acc });
    let mean_slack = results.iter().map(|t| t.slack).sum::<f64>() / trials as f64;
    let min_dominance = results.iter().map(|t| t.dominance).fold(f64::INFINITY, f64::min);
    let violations = results.iter().filter(|t| t.slack < -ctx.tol).count();
    r.field("dim", Field::Count(dim as u64))
        .field("outcomes", Field::Index(vec![outcomes.0, outcomes.1]))
        .field("kinds", Field::Text(format!("{},{}", kind_str(kinds.0), kind_str(kinds.1))))
        .field("trials", Field::Count(trials as u64))
        .field("min_slack_bits", Field::Bits(min_slack))
        .field("mean_slack_bits", Field::Bits(mean_slack))
        .field("worst_trial", Field::Count(worst as u64))
        .field("min_dominance_bits", Field::Bits(min_dominance))
        .field("violations", Field::Count(violations as u64))
        .check("master_inequality", violations == 0)
        .check("dominance", min_dominance >= -ctx.tol)
        .check("theorem_tags", results.iter().all(|t| t.theorem_consistent));
    Ok(r)
}

fn kind_str(k: MeasurementKind) -> &'static str {
    match k {
        MeasurementKind::Povm => "povm",
        MeasurementKind::Projective => "projective",
    }
}

pub fn search(ctx: &Context, a: &Path, b: &Path, restarts: usize, seed: u64) -> CommandResult {
    let mut r = ctx.report();
    r.seed(seed);
    let x = measurement_input(&mut r, a)?;
    let y = measurement_input(&mut r, b)?;
    same_dim(&x, y.dim(), "--b")?;
    if restarts == 0 {
        return Err(CommandError::Usage("--restarts must be positive".into()));
    }
    let found = minimize_gap(&x, &y, restarts, seed)?;
    let dep = bound_state_dependent(&x, &y, &found.state)?;
    r.field("restarts", Field::Count(restarts as u64))
        .field("gap_bits", Field::Bits(found.gap_bits))
        .field("bound_bits", Field::Bits(dep.bound_bits))
        .field("theorem", Field::Text(dep.theorem.to_string()))
        .field("best_restart", Field::Count(found.restart as u64))
        .field("state", Field::Complexes(found.state.amplitudes().iter().map(|z| [z.re, z.im]).collect()))
        .check("no_violation", found.gap_bits >= GAP_VIOLATION);
    Ok(r)
}

pub fn rt(ctx: &Context, a: &Path, b: &Path, state: &Path, t: f64, samples: usize, seed: u64) -> CommandResult {
    let mut r = ctx.report();
    r.seed(seed);
    let x = measurement_input(&mut r, a)?;
    let y = measurement_input(&mut r, b)?;
    let psi = pure_input(&mut r, state)?;
    same_dim(&x, y.dim(), "--b")?;
    same_dim(&x, psi.amplitudes().len(), "state")?;
    let overlap = overlap_matrix(&x, &y, &psi)?;
    let check = rt_check(&overlap, t, samples, seed)?;
    let ends = endpoint_check(&overlap, samples, seed);
    let p = outcome_distribution(&x, &psi)?;
    let q = outcome_distribution(&y, &psi)?;
    let limit = entropy_limit_check(&overlap, p.probabilities(), q.probabilities())?;
    r.field("t", Field::Real(t))
        .field("p_t", Field::Real(check.p_t.value()))
        .field("q_t", Field::Real(check.q_t.value()))
        .field("r_max", Field::Real(overlap.r_max))
        .field("r_pow_t", Field::Real(check.bound))
        .field("norm_lower_bound", Field::Real(check.norm_lower_bound))
        .field("norm_slack", Field::Real(check.norm_slack))
        .field("coefficient_lhs", Field::Real(check.coefficient_lhs))
        .field("coefficient_rhs", Field::Real(check.coefficient_rhs))
        .field("coefficient_slack", Field::Real(check.coefficient_slack))
        .field("overlap_identity_residual", Field::Residual(overlap.coefficient_residual()))
        .field("norm_2_2_lower_bound", Field::Real(ends.two_to_two))
        .field("norm_1_inf", Field::Real(ends.one_to_infinity))
        .field("limit_ts", Field::Reals(limit.points.iter().map(|p| p.t).collect()))
        .field("limit_lhs", Field::Reals(limit.points.iter().map(|p| p.lhs).collect()))
        .field("r_squared", Field::Real(limit.r_squared))
        .field("limit_nats", Field::Real(limit.limit_nats))
        .field("log_bound_nats", Field::Real(limit.log_bound_nats))
        .field("samples", Field::Count(samples as u64))
        .check("interpolated_norm", check.holds())
        .check("endpoints", ends.holds(ctx.tol))
        .check("entropy_limit", limit.holds());
    Ok(r)
}

pub enum GroupState {
    Uniform,
    Delta,
    File(PathBuf),
}

impl GroupState {
    pub fn parse(s: &str) -> Self {
        match s {
            "uniform" => GroupState::Uniform,
            "delta" => GroupState::Delta,
            path => GroupState::File(PathBuf::from(path)),
        }
    }
}

pub fn group(ctx: &Context, name: &str, state: &GroupState) -> CommandResult {
    let mut r = ctx.report();
    let g = build_group(name)?;
    let table = irreps(&g)?;
    let psi = match state {
        GroupState::Uniform => PureState::uniform(g.order()),
        GroupState::Delta => delta_state(&g),
        GroupState::File(path) => pure_input(&mut r, path)?,
    };
    if psi.amplitudes().len() != g.order() {
        return Err(CommandError::Usage(format!(
            "state dimension {} does not match group order {}",
            psi.amplitudes().len(),
            g.order()
        )));
    }
    let rep = verify_group_case(&g, &table, &psi)?;
    r.field("group", Field::Text(rep.group.clone()))
        .field("order", Field::Count(g.order() as u64))
        .field("abelian", Field::Flag(g.is_abelian()))
        .field("irrep_dims", Field::Index(table.dims()))
        .field("position_entropy_bits", Field::Bits(rep.position_entropy))
        .field("fourier_entropy_bits", Field::Bits(rep.fourier_entropy))
        .field("lhs_bits", Field::Bits(rep.lhs))
        .field("rhs_bits", Field::Bits(rep.rhs))
        .field("slack_bits", Field::Bits(rep.slack))
        .field("state_independent_bits", Field::Bits(rep.state_independent))
        .field("parseval_residual", Field::Residual(rep.parseval_residual))
        .field("equality", Field::Flag(rep.is_equality(ctx.tol)))
        .check("inequality_holds", rep.holds(ctx.tol))
        .check("rhs_matches_state_independent", rep.consistent(ctx.tol))
        .check("parseval", rep.parseval_residual <= ctx.tol);
    Ok(r)
}
