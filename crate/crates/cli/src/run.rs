// SPDX-License-Identifier: Apache-2.0

//! The three commands. Each computes everything in memory before writing.

use std::path::Path;

use qthermo_core::dynamics::{integrate, ChannelKind, DEFAULT_DT};
use qthermo_core::nonmarkov::{closed_form_trajectory, nm_report, temperature_witness, WitnessReport};
use qthermo_core::opcore::bloch_to_density;
use qthermo_core::thermo::ledger;
use qthermo_core::{BlochVector, ChannelSpec, Environment, Formulation, NMReport, ThermoSample, Trajectory};

use crate::config::{Experiment, Overrides, Scan};
use crate::error::{CliError, CliResult};
use crate::output::{
    ensure_dir, num, plot_script, scan_csv, temperature, thermo_csv, trajectory_csv, write_file, Csv,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    /// GAD relaxation of (0.45, 0, ±0.80) at k_B T_e = 10 ω₀.
    FigGad,
    /// Markovian dephasing in the xy-plane with a driven field.
    FigPdm,
    /// Non-Markovianity scan and the temperature witness.
    FigPdnm,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub trajectory: Trajectory,
    pub samples: Vec<ThermoSample>,
}

pub fn environment(spec: &ChannelSpec, traj: &Trajectory) -> CliResult<Environment> {
    Ok(match spec.kind {
        ChannelKind::Gad => Environment::thermal(spec.te, &traj.hamiltonian(0))?,
        _ => Environment::unital(2)?,
    })
}

pub fn simulate(exp: &Experiment) -> CliResult<Simulation> {
    let spec = exp.channel;
    let rho0 = bloch_to_density(&exp.initial_state)?;
    let trajectory = integrate(&spec, |t| spec.default_field(t), &rho0, exp.t_max, exp.dt)?;
    let env = environment(&spec, &trajectory)?;
    let samples = ledger(&trajectory, Some(&env))?;
    Ok(Simulation { trajectory, samples })
}

fn write_simulation(dir: &Path, sim: &Simulation, formulations: &[Formulation], plot: bool) -> CliResult<()> {
    ensure_dir(dir)?;
    write_file(&dir.join("trajectory.csv"), &trajectory_csv(&sim.trajectory))?;
    write_file(&dir.join("thermo.csv"), &thermo_csv(&sim.samples, formulations))?;
    if plot {
        let script = plot_script(
            "thermo",
            "thermo.csv",
            &[(5, "Q_std"), (6, "Q_ent"), (7, "Q_ergo"), (8, "Q_op"), (12, "T_ergo")],
            &[],
        );
        write_file(&dir.join("thermo.gp"), &script)?;
    }
    Ok(())
}

pub fn run_simulate(exp: &Experiment, out: &Path) -> CliResult<Simulation> {
    let sim = simulate(exp)?;
    write_simulation(out, &sim, &exp.formulations, exp.emit_plot_script)?;
    Ok(sim)
}

/// Reports in `s` order; rows are spread over the available cores.
pub fn nm_scan(scan: &Scan) -> CliResult<Vec<NMReport>> {
    let n = scan.s_values.len();
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(n.max(1));
    let chunk = n.div_ceil(workers.max(1)).max(1);
    let results: Vec<CliResult<Vec<NMReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = scan
            .s_values
            .chunks(chunk)
            .map(|ss| {
                scope.spawn(move || {
                    ss.iter()
                        .map(|&s| nm_report(s, scan.tau_max, scan.kappa).map_err(CliError::from))
                        .collect::<CliResult<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(n);
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run_nm_scan(scan: &Scan, out: &Path) -> CliResult<Vec<NMReport>> {
    let reports = nm_scan(scan)?;
    ensure_dir(out)?;
    write_file(&out.join("nm_scan.csv"), &scan_csv(&reports))?;
    if scan.emit_plot_script {
        write_file(&out.join("nm_scan.gp"), &scan_plot())?;
    }
    Ok(reports)
}

fn scan_plot() -> String {
    plot_script(
        "nm_scan",
        "nm_scan.csv",
        &[(2, "N_Q"), (3, "N_ent"), (4, "N_std")],
        &["set xlabel 's'".into(), "set ylabel 'N / omega0'".into()],
    )
}

fn experiment(channel: ChannelSpec, r0: BlochVector, t_max: f64, ov: Overrides) -> CliResult<Experiment> {
    let exp = Experiment {
        channel,
        initial_state: r0,
        t_max: ov.t_max.unwrap_or(t_max),
        dt: ov.dt.unwrap_or(DEFAULT_DT),
        formulations: Formulation::ALL.to_vec(),
        emit_plot_script: true,
    };
    if !(exp.dt > 0.0 && exp.t_max >= exp.dt && exp.t_max.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < dt <= t-max, got dt = {}, t-max = {}", exp.dt, exp.t_max)));
    }
    Ok(exp)
}

/// Built-in parameter sets of the three figures.
pub const GAD_TE: f64 = 10.0;
pub const GAD_T_MAX: f64 = 1.0;
pub const PDM_T_MAX: f64 = 10.0;
pub const PDNM_S: [f64; 2] = [2.0, 3.2];
pub const PDNM_RADIUS: f64 = 0.8;
pub const PDNM_INSET_TAU: f64 = 20.0;

pub fn gad_experiments(ov: Overrides) -> CliResult<[Experiment; 2]> {
    let spec = ChannelSpec::gad(1.0, 1.0, GAD_TE)?;
    Ok([
        experiment(spec, BlochVector::new(0.45, 0.0, 0.8)?, GAD_T_MAX, ov)?,
        experiment(spec, BlochVector::new(0.45, 0.0, -0.8)?, GAD_T_MAX, ov)?,
    ])
}

pub fn pdm_experiment(ov: Overrides) -> CliResult<Experiment> {
    experiment(ChannelSpec::pd_markov(1.0, 1.0, 1.0)?, BlochVector::new(0.5, 0.7, 0.0)?, PDM_T_MAX, ov)
}

pub fn pdnm_scan(ov: Overrides) -> Scan {
    Scan {
        s_values: (0..=60).map(|k| ((2.0 + 0.1 * k as f64) * 1e12).round() / 1e12).collect(),
        tau_max: ov.t_max.unwrap_or(qthermo_core::nonmarkov::DEFAULT_TAU_MAX),
        kappa: 2.0,
        emit_plot_script: true,
    }
}

pub fn pdnm_inset(dtau: f64) -> CliResult<Vec<(f64, Trajectory, WitnessReport)>> {
    let r0 = BlochVector::new(PDNM_RADIUS, 0.0, 0.0)?;
    PDNM_S
        .iter()
        .map(|&s| {
            let traj = closed_form_trajectory(s, 2.0, 1.0, &r0, PDNM_INSET_TAU, dtau)?;
            let w = temperature_witness(&traj);
            Ok((s, traj, w))
        })
        .collect()
}

/// `∫δQ_ergo/T_ergo` against the von Neumann entropy change.
pub fn entropy_csv(rows: &[ThermoSample]) -> String {
    let mut csv = Csv::new("omega_t,Q_ergo,Q_op,Q_ent,Q_std,dS_vn,dS_heat");
    let s0 = rows.first().map_or(0.0, |r| r.s);
    for r in rows {
        csv.row([r.t, r.q_ergo, r.q_op, r.q_ent, r.q_std, r.s - s0, r.entropy_from_heat].map(num));
    }
    csv.into_string()
}

pub fn run_reproduce(fig: Figure, out: &Path, ov: Overrides) -> CliResult<()> {
    match fig {
        Figure::FigGad => {
            let exps = gad_experiments(ov)?;
            let sims = exps.iter().map(simulate).collect::<CliResult<Vec<_>>>()?;
            for (name, sim) in ["plus", "minus"].iter().zip(&sims) {
                write_simulation(&out.join(name), sim, &Formulation::ALL, false)?;
            }
            let mut csv = Csv::new("omega0_t,T_ergo_plus,T_conv_plus,T_ent_plus,conv_crossing_plus,T_ergo_minus,T_conv_minus,T_ent_minus,conv_crossing_minus,T_e");
            for (p, m) in sims[0].samples.iter().zip(&sims[1].samples) {
                csv.row([
                    num(p.t),
                    temperature(p.t_ergo),
                    temperature(p.t_conv),
                    temperature(p.t_ent),
                    u8::from(p.conv_crossing).to_string(),
                    temperature(m.t_ergo),
                    temperature(m.t_conv),
                    temperature(m.t_ent),
                    u8::from(m.conv_crossing).to_string(),
                    num(GAD_TE),
                ]);
            }
            ensure_dir(out)?;
            write_file(&out.join("temperatures.csv"), &csv.into_string())?;
            let script = plot_script(
                "fig_gad",
                "temperatures.csv",
                &[(2, "T plus"), (3, "conventional plus"), (4, "entropy-based plus"), (6, "T minus"), (7, "conventional minus"), (8, "entropy-based minus"), (10, "T_e")],
                &["set xlabel 'omega0 t'".into(), "set ylabel 'k_B T / omega0'".into(), "set yrange [-40:40]".into()],
            );
            write_file(&out.join("fig_gad.gp"), &script)?;
        }
        Figure::FigPdm => {
            let exp = pdm_experiment(ov)?;
            let sim = simulate(&exp)?;
            write_simulation(out, &sim, &Formulation::ALL, false)?;
            write_file(&out.join("entropy.csv"), &entropy_csv(&sim.samples))?;
            let script = plot_script(
                "fig_pdm",
                "entropy.csv",
                &[(2, "Q"), (3, "Q_op"), (4, "Q_ent"), (5, "Q_std"), (6, "dS"), (7, "int dQ/T")],
                &["set xlabel 'omega t'".into()],
            );
            write_file(&out.join("fig_pdm.gp"), &script)?;
        }
        Figure::FigPdnm => {
            let scan = pdnm_scan(ov);
            let reports = nm_scan(&scan)?;
            let inset = pdnm_inset(ov.dt.unwrap_or(1e-2))?;
            ensure_dir(out)?;
            write_file(&out.join("nm_scan.csv"), &scan_csv(&reports))?;
            let mut series = Csv::new("omega_c_t,T_ergo_s2,T_ergo_s3.2,T_conv_s2,T_conv_s3.2,T_ent_s2,T_ent_s3.2");
            let (a, b) = (&inset[0].1, &inset[1].1);
            for i in 0..a.len() {
                let ta = qthermo_core::ergo::temperatures_qubit(&a.bloch(i), &a.fields[i]);
                let tb = qthermo_core::ergo::temperatures_qubit(&b.bloch(i), &b.fields[i]);
                series.row([
                    num(a.times[i]),
                    temperature(ta.t_ergo),
                    temperature(tb.t_ergo),
                    temperature(ta.t_conv),
                    temperature(tb.t_conv),
                    temperature(ta.t_ent),
                    temperature(tb.t_ent),
                ]);
            }
            write_file(&out.join("witness.csv"), &series.into_string())?;
            let mut summary = Csv::new("s,T_ergo_nonmonotonic,T_conv_nonmonotonic,T_ent_nonmonotonic,first_reversal_start,first_reversal_end");
            for (s, _, w) in &inset {
                let (r0, r1) = w.t_ergo.reversals.first().copied().unwrap_or((f64::NAN, f64::NAN));
                summary.row([
                    num(*s),
                    u8::from(w.t_ergo.nonmonotonic).to_string(),
                    u8::from(w.t_conv.nonmonotonic).to_string(),
                    u8::from(w.t_ent.nonmonotonic).to_string(),
                    num(r0),
                    num(r1),
                ]);
            }
            write_file(&out.join("witness_summary.csv"), &summary.into_string())?;
            write_file(&out.join("nm_scan.gp"), &scan_plot())?;
            let inset_script = plot_script(
                "fig_pdnm_inset",
                "witness.csv",
                &[(2, "T s=2"), (3, "T s=3.2")],
                &["set xlabel 'omega_c t'".into(), "set ylabel 'k_B T / omega0'".into()],
            );
            write_file(&out.join("fig_pdnm_inset.gp"), &inset_script)?;
        }
    }
    Ok(())
}
