//! Data-producing subcommands. Each returns named files; writing them is
//! left to the caller.

use std::path::Path;

use serde::Serialize;

use superfock::dynamics::{self, clifford_config, unitary_ia, unitary_iii, SuperchargeSpec};
use superfock::entanglement::{self, phi_grid};
use superfock::fock::{self, ModeConfig};
use superfock::susino::{self, Branch};
use superfock::table::Table;
use superfock::thermal;

use crate::checks::{run_checks, CheckReport};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

/// One output file.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

fn csv_or_json<T: Serialize>(config: &RunConfig, stem: &str, table: Table, rows: &T) -> Result<OutputFile> {
    Ok(match config.format {
        Format::Csv => OutputFile {
            name: format!("{stem}.csv"),
            contents: table.to_csv(),
        },
        Format::Json => OutputFile {
            name: format!("{stem}.json"),
            contents: serde_json::to_string_pretty(rows)? + "\n",
        },
    })
}

/// Writes every file into `dir`, creating it if needed.
pub fn write_files(dir: &Path, files: &[OutputFile]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    for file in files {
        let path = dir.join(&file.name);
        std::fs::write(&path, &file.contents).map_err(|source| CliError::Write { path, source })?;
    }
    Ok(())
}

pub fn cmd_check(config: &RunConfig) -> Result<(CheckReport, OutputFile)> {
    let report = run_checks(config)?;
    let file = OutputFile {
        name: "check.json".into(),
        contents: serde_json::to_string_pretty(&report)? + "\n",
    };
    Ok((report, file))
}

#[derive(Clone, Debug, Serialize)]
pub struct EvolveRow {
    pub flow: &'static str,
    pub s: f64,
    pub from_state: String,
    pub to_state: String,
    pub probability: f64,
}

/// Probabilities below this are not listed.
const PROBABILITY_FLOOR: f64 = 1e-15;

fn evolve_rows(flow: &'static str, config: &ModeConfig, u: &superfock::Operator, s: f64, rows: &mut Vec<EvolveRow>) {
    let basis = fock::enumerate_basis(config);
    for (from, state) in basis.iter().enumerate() {
        if state
            .boson_occ
            .iter()
            .any(|&m| m + config.safe_margin() > config.boson_cutoff())
        {
            continue;
        }
        for (to, p) in dynamics::transition_probabilities(u, from).into_iter().enumerate() {
            if p > PROBABILITY_FLOOR {
                rows.push(EvolveRow {
                    flow,
                    s,
                    from_state: state.to_string(),
                    to_state: basis[to].to_string(),
                    probability: p,
                });
            }
        }
    }
}

/// Transition probabilities of the single-mode flow Ia, the two-mode
/// flow Ia and the Clifford flow III, from every basis state inside the
/// safe subspace.
pub fn cmd_evolve(config: &RunConfig) -> Result<Vec<OutputFile>> {
    config.validate()?;
    let single = config.single_mode()?;
    let multi = config.multi_mode()?;
    let clifford = clifford_config(config.cutoff)?.with_margin(config.margin)?;
    let mut rows = Vec::new();
    for &s in &config.s_values {
        evolve_rows(
            "Ia",
            &single,
            &unitary_ia(&SuperchargeSpec::free(single.clone())?, s)?,
            s,
            &mut rows,
        );
        evolve_rows(
            "Ia-multi",
            &multi,
            &unitary_ia(&SuperchargeSpec::free(multi.clone())?, s)?,
            s,
            &mut rows,
        );
        evolve_rows(
            "III",
            &clifford,
            &unitary_iii(&SuperchargeSpec::clifford(clifford.clone())?, s)?,
            s,
            &mut rows,
        );
    }
    let mut table = Table::new(["flow", "s", "from_state", "to_state", "probability"]);
    for r in &rows {
        table.push(vec![
            r.flow.into(),
            r.s.into(),
            r.from_state.clone().into(),
            r.to_state.clone().into(),
            r.probability.into(),
        ]);
    }
    Ok(vec![csv_or_json(config, "evolve", table, &rows)?])
}

/// The entropy surface over `(k̄, φ)`, its per-`k̄` summary, the single
/// fermion entropies and the stationary points.
pub fn cmd_entangle(config: &RunConfig) -> Result<Vec<OutputFile>> {
    config.validate()?;
    let surface = entanglement::entanglement_surface(&config.kbar_grid, config.phi_steps)?;
    let mut table = Table::new(["kbar", "phi", "entropy"]);
    for r in &surface.rows {
        table.push(vec![r.kbar.into(), r.phi.into(), r.entropy.into()]);
    }
    let mut summary = Table::new(["kbar", "min", "max_real", "max_complex"]);
    for r in &surface.summaries {
        summary.push(vec![
            r.kbar.into(),
            r.min.into(),
            r.max_real.into(),
            r.max_complex.into(),
        ]);
    }
    let phis = phi_grid(config.phi_steps);
    let mut fermions = Vec::new();
    for &k in &config.kbar_grid {
        fermions.extend(entanglement::per_fermion_entropy(k, &phis)?);
    }
    let mut per_fermion = Table::new(["kbar", "phi", "e1", "e2"]);
    for r in &fermions {
        per_fermion.push(vec![r.kbar.into(), r.phi.into(), r.e1.into(), r.e2.into()]);
    }
    let extrema: Vec<_> = config
        .kbar_grid
        .iter()
        .map(|&k| entanglement::extremum_solve(k))
        .collect();
    let mut roots = Table::new(["kbar", "phi", "entropy", "derivative"]);
    for e in &extrema {
        for (&phi, &d) in e.roots.iter().zip(&e.derivatives) {
            roots.push(vec![
                e.kbar.into(),
                phi.into(),
                entanglement::surface_entropy(e.kbar, phi).into(),
                d.into(),
            ]);
        }
    }
    Ok(vec![
        csv_or_json(config, "entropy_surface", table, &surface.rows)?,
        csv_or_json(config, "entropy_summary", summary, &surface.summaries)?,
        csv_or_json(config, "fermion_entropy", per_fermion, &fermions)?,
        csv_or_json(config, "entropy_extrema", roots, &extrema)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct ThermalRow {
    pub beta: f64,
    pub s: f64,
    pub omega_nf: f64,
    pub omega_nb: f64,
    pub omega_nf_evolved: f64,
    pub drift_ib: f64,
}

pub fn cmd_thermal(config: &RunConfig) -> Result<Vec<OutputFile>> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut occupations = Vec::new();
    for &beta in &config.betas {
        let occ = thermal::mode_occupation_check(beta, config.thermal_cutoff)?;
        for &s in &config.s_values {
            let inv = thermal::ia_invariance(beta, s, config.thermal_cutoff)?;
            let drift = thermal::ib_drift(beta, s, config.thermal_cutoff)?;
            rows.push(ThermalRow {
                beta,
                s,
                omega_nf: occ[0].computed,
                omega_nb: occ[2].computed,
                omega_nf_evolved: inv.evolved,
                drift_ib: drift.first_order,
            });
        }
        occupations.extend(occ.into_iter().map(|r| (beta, r)));
    }
    let mut table = Table::new(["beta", "s", "omega_nf", "omega_nb", "omega_nf_evolved", "drift_ib"]);
    for r in &rows {
        table.push(vec![
            r.beta.into(),
            r.s.into(),
            r.omega_nf.into(),
            r.omega_nb.into(),
            r.omega_nf_evolved.into(),
            r.drift_ib.into(),
        ]);
    }
    let mut occ_table = Table::new(["beta", "observable", "computed", "expected", "error", "tolerance"]);
    for (beta, r) in &occupations {
        occ_table.push(vec![
            (*beta).into(),
            r.name.into(),
            r.computed.into(),
            r.expected.into(),
            r.error.into(),
            r.tolerance.into(),
        ]);
    }
    let occ_rows: Vec<_> = occupations
        .iter()
        .map(|(beta, r)| serde_json::json!({ "beta": beta, "row": r }))
        .collect();
    Ok(vec![
        csv_or_json(config, "thermal", table, &rows)?,
        csv_or_json(config, "thermal_occupations", occ_table, &occ_rows)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct SusinoRow {
    pub s: f64,
    pub name: String,
    pub expected_gamma: f64,
    pub measured_gamma: f64,
    pub defect: f64,
}

pub fn cmd_susino(config: &RunConfig) -> Result<Vec<OutputFile>> {
    config.validate()?;
    let single = config.single_mode()?;
    let mut rows = Vec::new();
    for &s in config.s_values.iter().filter(|&&s| s != 0.0) {
        let mut reports = susino::susino_phases(&single, s)?;
        for (m, n) in [(1, 2), (2, 1)] {
            if m + n + 2 <= single.boson_cutoff() {
                for branch in Branch::BOTH {
                    reports.push(susino::generalized_phase(&single, m, n, branch, s)?);
                }
            }
        }
        rows.extend(reports.into_iter().map(|r| SusinoRow {
            s,
            name: r.name,
            expected_gamma: r.expected_gamma,
            measured_gamma: r.measured_gamma,
            defect: r.defect,
        }));
    }
    let mut table = Table::new(["s", "name", "expected_gamma", "measured_gamma", "defect"]);
    for r in &rows {
        table.push(vec![
            r.s.into(),
            r.name.clone().into(),
            r.expected_gamma.into(),
            r.measured_gamma.into(),
            r.defect.into(),
        ]);
    }
    let stats = susino::statistics_report(&susino::build_susinos(&single)?)?;
    let mut stats_table = Table::new(["branch", "commutator_defect", "anticommutator_defect", "square"]);
    for r in &stats {
        stats_table.push(vec![
            r.branch.label().into(),
            r.commutator_defect.into(),
            r.anticommutator_defect.into(),
            r.square.into(),
        ]);
    }
    Ok(vec![
        csv_or_json(config, "susino_phases", table, &rows)?,
        csv_or_json(config, "susino_statistics", stats_table, &stats)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct WzRow {
    pub level: usize,
    pub energy: f64,
    pub energy_plus4: f64,
    pub difference: f64,
}

/// Low-lying spectrum of `H_g` at `Λ` and `Λ + 4`, the degeneracy pattern
/// and the comparison with the expanded closed form.
pub fn cmd_wz(config: &RunConfig) -> Result<Vec<OutputFile>> {
    config.validate()?;
    let (g, cutoff, count) = (config.wz_coupling, config.wz_cutoff, config.wz_levels);
    let low = dynamics::wz_spectrum(g, cutoff, count)?;
    let high = dynamics::wz_spectrum(g, cutoff + dynamics::supercharge::WZ_MARGIN, count)?;
    let rows: Vec<WzRow> = low
        .iter()
        .zip(&high)
        .enumerate()
        .map(|(level, (&e, &f))| WzRow {
            level,
            energy: e,
            energy_plus4: f,
            difference: (e - f).abs(),
        })
        .collect();
    let mut table = Table::new(["level", "energy", "energy_plus4", "difference"]);
    for r in &rows {
        table.push(vec![
            r.level.into(),
            r.energy.into(),
            r.energy_plus4.into(),
            r.difference.into(),
        ]);
    }
    let degeneracy = degeneracies(&low, 1e-8);
    let mut deg_table = Table::new(["energy", "multiplicity"]);
    for &(e, m) in &degeneracy {
        deg_table.push(vec![e.into(), m.into()]);
    }
    let closed = dynamics::wz_closed_form_compare(g, cutoff)?;
    let mut closed_table = Table::new(["g", "cutoff", "margin", "discrepancy", "hermiticity_defect"]);
    closed_table.push(vec![
        closed.g.into(),
        closed.cutoff.into(),
        closed.margin.into(),
        closed.discrepancy.into(),
        closed.hermiticity_defect.into(),
    ]);
    let deg_rows: Vec<_> = degeneracy
        .iter()
        .map(|&(energy, multiplicity)| serde_json::json!({ "energy": energy, "multiplicity": multiplicity }))
        .collect();
    Ok(vec![
        csv_or_json(config, "wz_spectrum", table, &rows)?,
        csv_or_json(config, "wz_degeneracy", deg_table, &deg_rows)?,
        csv_or_json(config, "wz_closed_form", closed_table, &closed)?,
    ])
}

/// Groups sorted eigenvalues closer than `tol`.
pub fn degeneracies(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((e, m)) if (v - *e).abs() <= tol => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}
