//! The invariant suite behind `superfock check`.

use std::f64::consts::LN_2;

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use superfock::dynamics::{
    self, build_clifford, build_g, build_h, build_wz, clifford_amplitude_defect, clifford_config,
    consistency_conditions, derivation, ib_generator, odd_flow_coefficients, sqrt_i, unitary_ia, unitary_iii, FlowKind,
    SuperchargeSpec,
};
use superfock::entanglement::{
    self, density_eigenvalues_closed_form, entropy, extremum_solve, reduce, single_mode_eigenvectors, superposition,
    two_mode_eigenbasis, EigenBranch, Subsystem, TwoModeParams,
};
use superfock::fock::{self, safe_defect, ModeConfig};
use superfock::graded::{self, GradedElement, Grading};
use superfock::operator::{anticomm, comm, Operator, C64, I};
use superfock::susino::{self, Branch};
use superfock::thermal;
use superfock::tolerances as tol;

use crate::config::RunConfig;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Passes when `value ≤ bound`.
    Below,
    /// Passes when `value > bound`.
    Above,
    /// Recorded only.
    Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub failures: Vec<String>,
    pub checks: Vec<Check>,
}

struct Recorder {
    checks: Vec<Check>,
    override_tol: Option<f64>,
}

impl Recorder {
    fn push(&mut self, suite: &'static str, name: impl Into<String>, value: f64, bound: f64, relation: Relation) {
        let bound = match (relation, self.override_tol) {
            (Relation::Below, Some(t)) => t,
            _ => bound,
        };
        let passed = match relation {
            Relation::Below => value <= bound,
            Relation::Above => value > bound,
            Relation::Report => true,
        };
        self.checks.push(Check {
            suite,
            name: name.into(),
            value,
            bound,
            relation,
            passed,
        });
    }

    fn below(&mut self, suite: &'static str, name: impl Into<String>, value: f64, bound: f64) {
        self.push(suite, name, value, bound, Relation::Below);
    }

    fn above(&mut self, suite: &'static str, name: impl Into<String>, value: f64, bound: f64) {
        self.push(suite, name, value, bound, Relation::Above);
    }

    fn report(&mut self, suite: &'static str, name: impl Into<String>, value: f64) {
        self.push(suite, name, value, f64::NAN, Relation::Report);
    }
}

pub fn run_checks(config: &RunConfig) -> Result<CheckReport> {
    config.validate()?;
    let mut rec = Recorder {
        checks: Vec::new(),
        override_tol: config.tolerance,
    };
    algebra(config, &mut rec)?;
    evolution(config, &mut rec)?;
    odd_derivation_suite(config, &mut rec)?;
    grassmann(config, &mut rec)?;
    clifford(config, &mut rec)?;
    two_mode(config, &mut rec)?;
    wess_zumino(config, &mut rec)?;
    susinos(config, &mut rec)?;
    entanglement_suite(config, &mut rec)?;
    thermal_suite(config, &mut rec)?;
    let failures: Vec<String> = rec
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}/{}", c.suite, c.name))
        .collect();
    Ok(CheckReport {
        passed: failures.is_empty(),
        failures,
        checks: rec.checks,
    })
}

/// Largest bracket defect of the canonical relations of every mode pair.
pub fn canonical_relation_defect(config: &ModeConfig, margin: usize) -> Result<f64> {
    let a: Vec<Operator> = (0..config.n_fermion())
        .map(|i| fock::fermion(config, i))
        .collect::<superfock::Result<_>>()?;
    let b: Vec<Operator> = (0..config.n_boson())
        .map(|j| fock::boson(config, j))
        .collect::<superfock::Result<_>>()?;
    let dim = config.dim();
    let delta = |i: usize, j: usize| {
        if i == j {
            Operator::identity(dim)
        } else {
            Operator::zeros(dim)
        }
    };
    let zero = Operator::zeros(dim);
    let mut worst: f64 = 0.0;
    let mut track = |x: Operator, y: &Operator| -> Result<()> {
        worst = worst.max(safe_defect(config, &x, y, margin)?);
        Ok(())
    };
    for i in 0..a.len() {
        for j in 0..a.len() {
            track(anticomm(&a[i], &a[j].adjoint())?, &delta(i, j))?;
            track(anticomm(&a[i], &a[j])?, &zero)?;
        }
        for bj in &b {
            track(comm(&a[i], bj)?, &zero)?;
            track(comm(&a[i], &bj.adjoint())?, &zero)?;
        }
    }
    for i in 0..b.len() {
        for j in 0..b.len() {
            track(comm(&b[i], &b[j].adjoint())?, &delta(i, j))?;
            track(comm(&b[i], &b[j])?, &zero)?;
        }
    }
    Ok(worst)
}

fn algebra(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "algebra";
    let multi = config.multi_mode()?;
    rec.below(
        S,
        "canonical relations",
        canonical_relation_defect(&multi, 1)?,
        tol::EXACT,
    );
    let spec = SuperchargeSpec::free(multi.clone())?;
    let g = build_g(&spec)?;
    rec.below(
        S,
        "G^2 = H",
        safe_defect(&multi, &(&g * &g), &build_h(&spec)?, 1)?,
        tol::EXACT,
    );
    let single = config.single_mode()?;
    let g1 = build_g(&SuperchargeSpec::free(single.clone())?)?;
    let n = fock::number_ops(&single).total;
    rec.below(
        S,
        "single-mode G^2 = N",
        safe_defect(&single, &(&g1 * &g1), &n, 1)?,
        tol::EXACT,
    );
    Ok(())
}

/// `e^{iGs}` from nalgebra's generic matrix exponential.
pub fn exp_oracle(g: &Operator, s: f64) -> Operator {
    Operator::from_matrix((g.matrix() * C64::new(0.0, s)).exp())
}

fn evolution(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "evolution";
    let single = config.single_mode()?.with_margin(2)?;
    let spec = SuperchargeSpec::free(single.clone())?;
    let g = build_g(&spec)?;
    let one = Operator::identity(single.dim());
    for &s in &config.s_values {
        let u = unitary_ia(&spec, s)?;
        rec.below(
            S,
            format!("oracle s={s}"),
            (&u - &exp_oracle(&g, s)).max_abs(),
            tol::EVOLUTION,
        );
        rec.below(
            S,
            format!("unitarity s={s}"),
            (&(&u * &u.adjoint()) - &one).max_abs(),
            tol::UNITARITY,
        );
        let half = unitary_ia(&spec, s / 2.0)?;
        rec.below(
            S,
            format!("group law s={s}"),
            (&(&half * &half) - &u).max_abs(),
            tol::EVOLUTION,
        );
        let a = fock::fermion(&single, 0)?;
        let b = fock::boson(&single, 0)?;
        let a_s = dynamics::heisenberg_ia(&spec, &a, s)?;
        let b_s = dynamics::heisenberg_ia(&spec, &b, s)?;
        rec.below(
            S,
            format!("a(s) closed form s={s}"),
            safe_defect(&single, &dynamics::closed_form_a_s(&single, s)?, &a_s, 2)?,
            tol::EVOLUTION,
        );
        rec.below(
            S,
            format!("b(s) closed form s={s}"),
            safe_defect(&single, &dynamics::closed_form_b_s(&single, s)?, &b_s, 2)?,
            tol::EVOLUTION,
        );
        rec.report(
            S,
            format!("a(s) printed coefficient order s={s}"),
            safe_defect(&single, &dynamics::printed_closed_form_a_s(&single, s)?, &a_s, 2)?,
        );
    }
    for flow in FlowKind::ALL {
        let r = consistency_conditions(flow, config.cutoff.max(4))?;
        rec.below(S, format!("{} condition beta", flow.name()), r.beta, tol::DEFAULT);
        rec.below(S, format!("{} condition gamma", flow.name()), r.gamma, tol::DEFAULT);
        if flow == FlowKind::Ib {
            rec.above(S, "Ib condition alpha fails", r.alpha, tol::NONZERO_DEFECT);
        } else {
            rec.below(S, format!("{} condition alpha", flow.name()), r.alpha, tol::DEFAULT);
        }
        if let (Some(ta), Some(tb)) = (r.theta_alpha, r.theta_beta) {
            rec.below(S, format!("{} theta conditions", flow.name()), ta.max(tb), tol::DEFAULT);
        }
        if let Some(frozen) = r.frozen_theta_alpha {
            rec.above(
                S,
                format!("{} frozen-theta condition fails", flow.name()),
                frozen,
                tol::NONZERO_DEFECT,
            );
        }
    }
    Ok(())
}

fn matrix2_distance(x: &Matrix2<C64>, y: &Matrix2<C64>) -> f64 {
    (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `(defect of e^{s√i}, defect of e^{s/√i})` for the combination
/// `a(s)/√i + b(s)` relative to `a/√i + b`.
pub fn invariant_combination_defects(s: f64) -> (f64, f64) {
    let m = odd_flow_coefficients(s);
    let r = sqrt_i();
    let v = [m[(0, 0)] / r + m[(0, 1)], m[(1, 0)] / r + m[(1, 1)]];
    let target = [C64::new(1.0, 0.0) / r, C64::new(1.0, 0.0)];
    let defect = |f: C64| {
        v.iter()
            .zip(target)
            .map(|(x, t)| (x - f * t).norm())
            .fold(0.0, f64::max)
    };
    (defect((r * s).exp()), defect((C64::new(s, 0.0) / r).exp()))
}

fn odd_derivation_suite(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "odd-derivation";
    let single = config.single_mode()?.with_margin(2)?;
    let g = build_g(&SuperchargeSpec::free(single.clone())?)?;
    let h = &g * &g;
    let a = fock::fermion(&single, 0)?;
    let b = fock::boson(&single, 0)?;
    rec.below(
        S,
        "delta a = b",
        safe_defect(&single, &derivation(&single, &g, &a)?, &b, 1)?,
        tol::EXACT,
    );
    rec.below(
        S,
        "delta b = -i a",
        safe_defect(&single, &derivation(&single, &g, &b)?, &a.scale(-I), 1)?,
        tol::EXACT,
    );
    let mut second: f64 = 0.0;
    for x in [&a, &a.adjoint(), &b, &b.adjoint()] {
        let dd = derivation(&single, &g, &derivation(&single, &g, x)?)?;
        second = second.max(safe_defect(&single, &dd, &comm(&h, x)?.scale(I), 2)?);
    }
    rec.below(S, "delta^2 = i[H, .]", second, tol::EXACT);
    let generator = ib_generator(&single, &g)?;
    let integrated = dynamics::derivation::integrate_linear_flow(&generator.matrix, 1.0, 400);
    rec.below(
        S,
        "integrated flow at s=1",
        matrix2_distance(&integrated, &odd_flow_coefficients(1.0)),
        tol::ODE,
    );
    for &s in &config.s_values {
        let (literal, derived) = invariant_combination_defects(s);
        rec.report(S, format!("combination factor e^(s sqrt i) s={s}"), literal);
        rec.below(
            S,
            format!("combination factor e^(s/sqrt i) s={s}"),
            derived,
            tol::DEFAULT,
        );
    }
    Ok(())
}

fn grassmann(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "grassmann";
    let single = config.single_mode()?;
    let spec = SuperchargeSpec::free(single.clone())?;
    let g = build_g(&spec)?;
    let grading = Grading::new(&single);
    let dim = single.dim();
    let a = fock::fermion(&single, 0)?;
    let b = fock::boson(&single, 0)?;
    let mut flow_defect: f64 = 0.0;
    for &s in &config.s_values {
        let cases = [
            (a.clone(), b.scale_real(s)),
            (b.clone(), a.scale_real(-s)),
            (b.adjoint(), a.adjoint().scale_real(s)),
        ];
        for (x, soul) in cases {
            let out = grading.flow(&g, &GradedElement::body_only(x.clone()), s)?;
            flow_defect = flow_defect
                .max(safe_defect(&single, &out.body, &x, 1)?)
                .max(safe_defect(&single, &out.soul, &soul, 1)?);
        }
        let theta = GradedElement::theta(dim);
        flow_defect = flow_defect.max((&grading.flow(&g, &theta, s)? - &theta).max_abs());
        let u = graded::grassmann_unitary(&spec, s)?;
        let id = GradedElement::identity(dim);
        let unitarity = (&grading.gmul(&u, &grading.gstar(&u))? - &id)
            .max_abs()
            .max((&grading.gmul(&grading.gstar(&u), &u)? - &id).max_abs());
        rec.below(S, format!("graded unitarity s={s}"), unitarity, 0.0);
        rec.below(
            S,
            format!("body of U s={s}"),
            (&graded::body_projection(&u) - &Operator::identity(dim)).max_abs(),
            0.0,
        );
    }
    rec.below(S, "flow on generators", flow_defect, tol::THETA_MODEL);
    let model = graded::theta_matrix_model(&single)?;
    let t = &model.theta;
    let mut defect = (t * t).max_abs();
    for x in model.fermions.iter().flat_map(|x| [x.clone(), x.adjoint()]) {
        defect = defect.max(anticomm(t, &x)?.max_abs());
    }
    for x in model.bosons.iter().flat_map(|x| [x.clone(), x.adjoint()]) {
        defect = defect.max(comm(t, &x)?.max_abs());
    }
    rec.below(S, "theta model relations", defect, tol::THETA_MODEL);
    Ok(())
}

/// Largest deviation of a column sum of `|U_ji|²` from one.
pub fn row_sum_defect(u: &Operator) -> f64 {
    (0..u.dim())
        .map(|from| (dynamics::transition_probabilities(u, from).iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max)
}

fn clifford(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "clifford";
    let c = clifford_config(config.cutoff)?;
    let spec = SuperchargeSpec::clifford(c.clone())?;
    let charge = build_clifford(&spec)?;
    rec.below(
        S,
        "G^2 closed form",
        safe_defect(&c, &(&charge.g * &charge.g), &charge.g_squared_closed_form, 1)?,
        tol::EXACT,
    );
    rec.report(S, "-i form hermiticity defect", charge.minus_i_hermiticity_defect);
    for &s in &config.s_values {
        rec.below(
            S,
            format!("amplitudes s={s}"),
            clifford_amplitude_defect(&spec, s)?,
            tol::DEFAULT,
        );
        rec.below(
            S,
            format!("probability sums s={s}"),
            row_sum_defect(&unitary_iii(&spec, s)?),
            tol::UNITARITY,
        );
    }
    Ok(())
}

/// Worst `|closed-form norm − 1|` and worst distance of the closed-form
/// state from the matrix evolution over basis states with every
/// `n_b ≤ Λ − 1`.
pub fn two_mode_norm_defects(config: &ModeConfig, u: &Operator, s: f64) -> Result<(f64, f64)> {
    let mut norm: f64 = 0.0;
    let mut state: f64 = 0.0;
    for (i, basis) in fock::enumerate_basis(config).iter().enumerate() {
        if basis.boson_occ.iter().any(|&m| m >= config.boson_cutoff()) {
            continue;
        }
        norm = norm.max((dynamics::closed_form_norm(config, basis, s) - 1.0).abs());
        let closed = dynamics::closed_form_evolved_state(config, basis, s)?;
        norm = norm.max((closed.norm() - 1.0).abs());
        let column = u.apply(&superfock::StateVector::basis(config.dim(), i));
        state = state.max(closed.distance(&column));
    }
    Ok((norm, state))
}

fn two_mode(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "two-mode";
    let multi = config.multi_mode()?;
    for &s in &config.s_values {
        let u = unitary_ia(&SuperchargeSpec::free(multi.clone())?, s)?;
        let (norm, state) = two_mode_norm_defects(&multi, &u, s)?;
        rec.below(S, format!("normalisation s={s}"), norm, tol::DEFAULT);
        rec.below(S, format!("closed-form state s={s}"), state, tol::EVOLUTION);
        rec.below(S, format!("probability sums s={s}"), row_sum_defect(&u), tol::UNITARITY);
    }
    Ok(())
}

fn wess_zumino(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "wess-zumino";
    let margin = dynamics::supercharge::WZ_MARGIN;
    let c = ModeConfig::single_mode(config.wz_cutoff)?.with_margin(margin)?;
    let wz = build_wz(&SuperchargeSpec::wess_zumino(c.clone(), config.wz_coupling)?)?;
    rec.below(
        S,
        "{Q, Q^dag} = G^2",
        safe_defect(&c, &anticomm(&wz.q, &wz.q_dag)?, &wz.h, margin)?,
        tol::WESS_ZUMINO,
    );
    rec.below(S, "[G, H]", comm(&wz.g, &wz.h)?.max_abs(), tol::WESS_ZUMINO);
    rec.below(
        S,
        "spectrum at cutoff and cutoff+4",
        dynamics::wz_convergence(config.wz_coupling, config.wz_cutoff, config.wz_levels)?,
        tol::WZ_CONVERGENCE,
    );
    let report = dynamics::wz_closed_form_compare(config.wz_coupling, config.wz_cutoff)?;
    rec.report(S, "closed-form discrepancy", report.discrepancy);
    Ok(())
}

fn susinos(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "susino";
    let single = config.single_mode()?;
    let pair = susino::build_susinos(&single)?;
    let g = build_g(&SuperchargeSpec::free(single.clone())?)?;
    for branch in Branch::BOTH {
        let x = pair.get(branch);
        let defect = (&comm(x, &g)? + &x.scale_real(branch.sign())).max_abs();
        rec.below(S, format!("[A{}, G] = -+A", branch.label()), defect, tol::EXACT);
        rec.below(S, format!("A{}^2 = 0", branch.label()), (x * x).max_abs(), 0.0);
    }
    for &s in config.s_values.iter().filter(|&&s| s != 0.0) {
        for r in susino::susino_phases(&single, s)? {
            rec.below(S, format!("phase {} s={s}", r.name), r.defect, tol::DEFAULT);
        }
        for (m, n) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
            if m + n + 2 > single.boson_cutoff() {
                continue;
            }
            for branch in Branch::BOTH {
                let r = susino::generalized_phase(&single, m, n, branch, s)?;
                rec.below(S, format!("phase {} s={s}", r.name), r.defect, tol::DEFAULT);
            }
        }
    }
    let perturbed = susino::perturbed_evolution(&single.with_margin(2)?, 0.5, 1.0)?;
    rec.below(S, "H_alpha = (G + alpha/2)^2", perturbed.identity_defect, tol::EXACT);
    rec.below(
        S,
        "perturbed susino phases",
        perturbed.susino_residuals.iter().copied().fold(0.0, f64::max),
        tol::DEFAULT,
    );
    Ok(())
}

/// Uniform random unit pair `(A, B)`.
pub fn random_weights(rng: &mut impl Rng) -> (C64, C64) {
    let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    (C64::new(v[0] / norm, v[1] / norm), C64::new(v[2] / norm, v[3] / norm))
}

/// Largest difference between the sorted closed-form ρ_F eigenvalues and
/// those of the partial trace, over `draws` random parameter sets.
pub fn random_density_defect(draws: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let (a, b) = random_weights(&mut rng);
        let n1 = rng.random_range(0..3);
        let n2 = rng.random_range(0..3);
        let k = rng.random_range(0.0..2.0);
        let branch = if rng.random_bool(0.5) {
            EigenBranch::Upper
        } else {
            EigenBranch::Lower
        };
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let params = TwoModeParams::new(n1, n2, k, a / norm, b / norm)?;
        let basis = two_mode_eigenbasis(&params, branch)?;
        let state = superposition(&basis, &params);
        let rho = reduce(&basis.config, &state, &Subsystem::all_fermions(&basis.config))?;
        let mut brute = rho.eigenvalues();
        let mut closed = density_eigenvalues_closed_form(&params)?.to_vec();
        brute.sort_by(f64::total_cmp);
        closed.sort_by(f64::total_cmp);
        for (x, y) in brute.iter().zip(&closed) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

fn entanglement_suite(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "entanglement";
    let single = config.single_mode()?;
    let mut lemma: f64 = 0.0;
    for n in 1..=single.boson_cutoff().min(8) {
        let (plus, minus) = single_mode_eigenvectors(&single, n)?;
        for v in [plus, minus] {
            for keep in [Subsystem::all_fermions(&single), Subsystem::all_bosons(&single)] {
                lemma = lemma.max((entropy(&reduce(&single, &v, &keep)?) - LN_2).abs());
            }
        }
    }
    rec.below(S, "single-mode entropy ln 2", lemma, tol::DEFAULT);
    let surface = entanglement::entanglement_surface(&config.kbar_grid, config.phi_steps)?;
    rec.below(
        S,
        "closed form vs partial trace on the grid",
        surface.cross_check,
        tol::DEFAULT,
    );
    for summary in &surface.summaries {
        let k = summary.kbar;
        rec.below(
            S,
            format!("A=iB entropy 2 ln 2 kbar={k}"),
            (summary.max_complex - 2.0 * LN_2).abs(),
            tol::DEFAULT,
        );
        if k == 0.0 {
            rec.below(
                S,
                "minimum ln 2 at kbar=0",
                (summary.min - LN_2).abs(),
                tol::ENTROPY_EXTREMUM,
            );
        }
        if k == 1.0 {
            rec.below(
                S,
                "minimum 1.5 ln 2 at kbar=1",
                (summary.min - 1.5 * LN_2).abs(),
                tol::ENTROPY_EXTREMUM,
            );
        }
        let extremum = extremum_solve(k);
        let stationary = extremum.derivatives.iter().map(|d| d.abs()).fold(0.0, f64::max);
        rec.below(
            S,
            format!("extremum stationarity kbar={k}"),
            stationary,
            tol::STATIONARY,
        );
        let printed = extremum
            .roots
            .iter()
            .map(|&r| entanglement::printed_extremal_residual(k, r).abs())
            .fold(0.0, f64::max);
        rec.report(S, format!("printed extremal equation residual kbar={k}"), printed);
    }
    rec.below(
        S,
        format!("random closed-form eigenvalues ({} draws)", config.random_draws),
        random_density_defect(config.random_draws, config.seed)?,
        tol::DEFAULT,
    );
    Ok(())
}

/// A random word of length 1 to 3 in `a, a†, b, b†`.
pub fn random_word(config: &ModeConfig, rng: &mut impl Rng) -> Result<Operator> {
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    let letters = [a.clone(), a.adjoint(), b.clone(), b.adjoint()];
    let len = rng.random_range(1..=3);
    let mut word = Operator::identity(config.dim());
    for _ in 0..len {
        word = &word * &letters[rng.random_range(0..letters.len())];
    }
    Ok(word)
}

fn thermal_suite(config: &RunConfig, rec: &mut Recorder) -> Result<()> {
    const S: &str = "thermal";
    let cutoff = config.thermal_cutoff;
    for &beta in &config.betas {
        for row in thermal::mode_occupation_check(beta, cutoff)? {
            rec.below(S, format!("omega({}) beta={beta}", row.name), row.error, row.tolerance);
        }
        for &s in &config.s_values {
            let r = thermal::ia_invariance(beta, s, cutoff)?;
            rec.below(
                S,
                format!("Ia invariance beta={beta} s={s}"),
                (r.evolved - r.expected).abs(),
                tol::THERMAL_INVARIANCE,
            );
            rec.below(
                S,
                format!("omega([a^dag a, G]) beta={beta} s={s}"),
                r.commutator,
                tol::DEFAULT,
            );
            rec.below(
                S,
                format!("omega(G[a^dag a, G]) beta={beta} s={s}"),
                r.double_commutator,
                tol::DEFAULT,
            );
            rec.below(
                S,
                format!("omega([G, G_A]) beta={beta} s={s}"),
                r.ga_commutator,
                tol::DEFAULT,
            );
            rec.below(
                S,
                format!("omega([G, G_A]) closed form beta={beta} s={s}"),
                r.ga_closed_form,
                2.0 * r.tolerance,
            );
            let d = thermal::ib_drift(beta, s, cutoff)?;
            rec.below(
                S,
                format!("Ib drift beta={beta} s={s}"),
                (d.first_order - d.expected).abs(),
                d.tolerance,
            );
        }
    }
    let small = ModeConfig::single_mode(cutoff.min(8))?;
    let h = build_h(&SuperchargeSpec::free(small.clone())?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut kms: f64 = 0.0;
    for &beta in &config.betas {
        for _ in 0..8 {
            let x = random_word(&small, &mut rng)?;
            let y = random_word(&small, &mut rng)?;
            kms = kms.max(thermal::kms_defect(&h, beta, &x, &y)?);
        }
    }
    rec.below(S, "KMS on random words", kms, tol::KMS);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_factors() {
        let (literal, derived) = invariant_combination_defects(1.0);
        assert!(derived < 1e-14);
        assert!(literal > 0.5);
    }

    #[test]
    fn override_applies_to_upper_bounds_only() {
        let mut rec = Recorder {
            checks: Vec::new(),
            override_tol: Some(1e-16),
        };
        rec.below("x", "b", 1e-15, 1e-10);
        rec.above("x", "a", 1.0, 0.5);
        rec.report("x", "r", 3.0);
        assert_eq!(rec.checks.iter().filter(|c| c.passed).count(), 2);
    }
}
