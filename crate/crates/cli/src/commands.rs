//! The five subcommands. Each takes the loaded scenario, writes its
//! outputs under the run directory, and leaves a manifest beside them.

use std::path::Path;

use dualcavity_core::charges::{charge_report, ChargeReport, DiracRatioReport};
use dualcavity_core::classical::{eval_field, SolutionKind};
use dualcavity_core::currents::{
    continuity_residual, noether_currents, ContinuityGrid, CurrentSelect, FieldComponents,
};
use dualcavity_core::diagnostics::truncation_defect;
use dualcavity_core::energy::hamiltonian_canonical;
use dualcavity_core::fock::{
    canonical_ops, field_operator, hamiltonian_operator, ladder_pair, FieldOpKind, OpFamily,
};
use dualcavity_core::linalg::hermitian_eigenvalues;
use dualcavity_core::matrix::OperatorMatrix;
use serde::Serialize;

use crate::config::Scenario;
use crate::format::{sig17, write_json, CsvWriter};
use crate::Result;

fn solution_label(which: SolutionKind) -> &'static str {
    match which {
        SolutionKind::Sol1 => "SOL1",
        SolutionKind::Sol2 => "SOL2",
        SolutionKind::Combined => "COMBINED",
    }
}

/// Field samples over the configured grid for all three reconstructions,
/// plus the canonical energy trace of both solutions.
pub fn classical_evolve(scenario: &Scenario, out_dir: &Path) -> Result<()> {
    let grid = scenario.grid;
    let period = 2.0 * std::f64::consts::PI / scenario.mode_set.modes()[0].omega;
    let t_span = grid.periods * period;

    let mut fields = CsvWriter::new(
        &out_dir.join("fields.csv"),
        "z,t,which,Ex_re,Ex_im,Hy_re,Hy_im",
    );
    for which in [SolutionKind::Sol1, SolutionKind::Sol2, SolutionKind::Combined] {
        for iz in 0..=grid.nz {
            let z = scenario.cavity.length * iz as f64 / grid.nz as f64;
            for it in 0..=grid.nt {
                let t = t_span * it as f64 / grid.nt as f64;
                let s = eval_field(
                    &scenario.states,
                    &scenario.mode_set,
                    &scenario.cavity,
                    which,
                    z,
                    t,
                )?;
                fields.row(
                    &[&sig17(z), &sig17(t), solution_label(which)],
                    &[s.ex.re, s.ex.im, s.hy.re, s.hy.im],
                );
            }
        }
    }
    fields.finish()?;

    let mut energy = CsvWriter::new(&out_dir.join("energy.csv"), "t,H1_re,H1_im,H2_re,H2_im");
    for it in 0..=grid.nt {
        let t = t_span * it as f64 / grid.nt as f64;
        let h1 = hamiltonian_canonical(&scenario.states, &scenario.mode_set, SolutionKind::Sol1, t)?;
        let h2 = hamiltonian_canonical(&scenario.states, &scenario.mode_set, SolutionKind::Sol2, t)?;
        energy.row(&[&sig17(t)], &[h1.re, h1.im, h2.re, h2.im]);
    }
    energy.finish()
}

#[derive(Serialize)]
struct OperatorDump {
    dim: usize,
    entries: Vec<[f64; 2]>,
    hermitian: bool,
}

impl OperatorDump {
    fn new(m: &OperatorMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m.entries().iter().map(|c| [c.re, c.im]).collect(),
            hermitian: m.hermitian(),
        }
    }
}

#[derive(Serialize)]
struct DefectReport {
    n_levels: usize,
    top_defect: f64,
    expected_top_defect: f64,
    interior_deviation: f64,
    off_diagonal: f64,
}

/// Operator dumps, the ladder-commutator defect report, and the
/// Hamiltonian spectrum of the fundamental mode.
pub fn quantize(scenario: &Scenario, out_dir: &Path) -> Result<()> {
    let space = scenario.fock_space()?;
    let mode = scenario.mode_set.modes()[0];
    let cavity = &scenario.cavity;
    let ops_dir = out_dir.join("operators");

    let (a, a_dagger) = ladder_pair(space);
    write_json(&ops_dir.join("a.json"), &OperatorDump::new(&a))?;
    write_json(&ops_dir.join("a_dagger.json"), &OperatorDump::new(&a_dagger))?;

    for (family, q_name, p_name) in [
        (OpFamily::Unprimed, "q_hat.json", "p_hat.json"),
        (OpFamily::DoublePrimed, "q_hat_pp.json", "p_hat_pp.json"),
    ] {
        let (q, p) = canonical_ops(space, mode.mass, mode.omega, cavity.hbar, family)?;
        write_json(&ops_dir.join(q_name), &OperatorDump::new(&q))?;
        write_json(&ops_dir.join(p_name), &OperatorDump::new(&p))?;
    }

    // Field operators at the cavity third, where neither profile is at a
    // node, at t = 0.
    let z = cavity.length / 3.0;
    for (kind, name) in [
        (FieldOpKind::E1, "e1.json"),
        (FieldOpKind::H1, "h1.json"),
        (FieldOpKind::E2, "e2.json"),
        (FieldOpKind::H2, "h2.json"),
        (FieldOpKind::ECombined, "e_combined.json"),
        (FieldOpKind::HCombined, "h_combined.json"),
    ] {
        let op = field_operator(&mode, space, cavity, kind, z, 0.0)?;
        write_json(&ops_dir.join(name), &OperatorDump::new(&op))?;
    }

    let hamiltonian = hamiltonian_operator(&mode, space, cavity.hbar, OpFamily::Unprimed)?;
    write_json(&ops_dir.join("hamiltonian.json"), &OperatorDump::new(&hamiltonian))?;

    let eig = hermitian_eigenvalues(&hamiltonian)?;
    let mut spectrum = CsvWriter::new(&out_dir.join("spectrum.csv"), "eigenvalue");
    for e in eig {
        spectrum.row(&[], &[e]);
    }
    spectrum.finish()?;

    let defect = truncation_defect(space)?;
    write_json(
        &out_dir.join("defect.json"),
        &DefectReport {
            n_levels: space.n_levels(),
            top_defect: defect.top_defect,
            expected_top_defect: -((space.n_levels() - 1) as f64),
            interior_deviation: defect.interior_deviation,
            off_diagonal: defect.off_diagonal,
        },
    )
}

#[derive(Serialize)]
struct ContinuityReport {
    max_abs: f64,
    max_rel: f64,
    under_resolved: bool,
    nz: usize,
    nt: usize,
}

/// Current components over the grid plus the continuity summary.
pub fn currents(scenario: &Scenario, out_dir: &Path) -> Result<()> {
    let fc = FieldComponents::new(&scenario.mode_set, &scenario.states, &scenario.cavity)?;
    let grid = scenario.grid;
    let period = 2.0 * std::f64::consts::PI / scenario.mode_set.modes()[0].omega;
    let t_span = grid.periods * period;

    let mut header = String::from("z,t");
    for current in ["j1", "j2"] {
        for mu in 1..=4 {
            header.push_str(&format!(",{current}_{mu}_re,{current}_{mu}_im"));
        }
    }
    let mut csv = CsvWriter::new(&out_dir.join("currents.csv"), &header);
    for iz in 0..=grid.nz {
        let z = scenario.cavity.length * iz as f64 / grid.nz as f64;
        for it in 0..=grid.nt {
            let t = t_span * it as f64 / grid.nt as f64;
            let cur = noether_currents(&fc, scenario.e_charge, scenario.cavity.hbar, z, t);
            let mut values = Vec::with_capacity(16);
            for j in [&cur.j1, &cur.j2] {
                for mu in 0..4 {
                    values.push(j[mu].re);
                    values.push(j[mu].im);
                }
            }
            csv.row(&[&sig17(z), &sig17(t)], &values);
        }
    }
    csv.finish()?;

    let residual = continuity_residual(
        &fc,
        &scenario.mode_set,
        &scenario.cavity,
        scenario.e_charge,
        CurrentSelect::Total,
        ContinuityGrid {
            nz: grid.nz,
            nt: grid.nt,
            t_span,
        },
    )?;
    write_json(
        &out_dir.join("continuity.json"),
        &ContinuityReport {
            max_abs: residual.max_abs,
            max_rel: residual.max_rel,
            under_resolved: residual.under_resolved,
            nz: grid.nz,
            nt: grid.nt,
        },
    )
}

#[derive(Serialize)]
struct ChargeReportJson {
    modes: Vec<ChargeModeJson>,
    g: f64,
    density_profile: Vec<DensityPoint>,
    dirac: DiracJson,
}

#[derive(Serialize)]
struct ChargeModeJson {
    alpha: u32,
    omega: f64,
    #[serde(rename = "K1")]
    k1: f64,
    #[serde(rename = "K2")]
    k2: f64,
    charge_quantum: f64,
}

#[derive(Serialize)]
struct DensityPoint {
    z: f64,
    coeff: f64,
}

#[derive(Serialize)]
struct DiracJson {
    low: f64,
    high: f64,
    g_over_e_low: f64,
    g_over_e_high: f64,
    dirac_value: f64,
    midpoint_deviation: f64,
}

fn charge_report_json(report: &ChargeReport) -> ChargeReportJson {
    ChargeReportJson {
        modes: report
            .modes
            .iter()
            .map(|m| ChargeModeJson {
                alpha: m.alpha,
                omega: m.omega,
                k1: m.k1,
                k2: m.k2,
                charge_quantum: m.charge_quantum,
            })
            .collect(),
        g: report.g,
        density_profile: report
            .density_profile
            .iter()
            .map(|(z, coeff)| DensityPoint { z: *z, coeff: *coeff })
            .collect(),
        dirac: dirac_json(&report.dirac),
    }
}

fn dirac_json(d: &DiracRatioReport) -> DiracJson {
    DiracJson {
        low: d.j_ratio_low,
        high: d.j_ratio_high,
        g_over_e_low: d.g_over_e_low,
        g_over_e_high: d.g_over_e_high,
        dirac_value: d.dirac_value,
        midpoint_deviation: d.midpoint_deviation,
    }
}

/// Charge quanta, the vacuum density profile, and the ratio summary.
pub fn charge_report_cmd(scenario: &Scenario, out_dir: &Path) -> Result<()> {
    let space = scenario.fock_space()?;
    let report = charge_report(
        &scenario.mode_set,
        space,
        &scenario.constants,
        &scenario.cavity,
        scenario.e_charge,
        64,
        (scenario.j_ratio.low, scenario.j_ratio.high),
    )?;
    write_json(&out_dir.join("charge_report.json"), &charge_report_json(&report))
}
