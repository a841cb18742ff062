// SPDX-License-Identifier: Apache-2.0

//! Deterministic CSV and plot-script writers.

use std::fmt::Write as _;
use std::path::Path;

use qthermo_core::{Formulation, NMReport, Temperature, ThermoSample, Trajectory};

use crate::error::{CliError, CliResult};

pub const TRAJECTORY_HEADER: &str = "t,x,y,z,hx,hy,hz";
pub const THERMO_HEADER: &str =
    "t,U,S,E,Q_std,Q_ent,Q_ergo,Q_op,W_std,W_ent,W_ergo,T_ergo,T_conv,T_ent,Sigma,residual_max";
pub const SCAN_HEADER: &str = "s,N_Q,N_ent,N_std,n_intervals,a1,b1,truncated_flag,argmax_r0,argmax_theta0";

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// `0` for the pure limit, `inf`, `divergent` and `undefined` for the other sentinels.
pub fn temperature(t: Temperature) -> String {
    match t {
        Temperature::Finite(x) => num(x),
        Temperature::PureLimit => num(0.0),
        Temperature::Infinite => "inf".into(),
        Temperature::Divergent => "divergent".into(),
        Temperature::Undefined => "undefined".into(),
    }
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        let mut text = String::with_capacity(1 << 16);
        text.push_str(header);
        text.push('\n');
        Self { text }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for (i, c) in cells.into_iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            self.text.push_str(c.as_ref());
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut csv = Csv::new(TRAJECTORY_HEADER);
    for i in 0..traj.len() {
        let r = traj.bloch(i);
        let h = traj.fields[i];
        csv.row([traj.times[i], r.x, r.y, r.z, h.hx, h.hy, h.hz].map(num));
    }
    csv.into_string()
}

/// Columns of formulations not in `selected` are written as `nan`.
pub fn thermo_csv(rows: &[ThermoSample], selected: &[Formulation]) -> String {
    let on = |f: Formulation, x: f64| if selected.contains(&f) { x } else { f64::NAN };
    let mut csv = Csv::new(THERMO_HEADER);
    for r in rows {
        let residual = [
            (Formulation::Standard, r.residuals.standard),
            (Formulation::EntropyBased, r.residuals.entropy_based),
            (Formulation::ErgotropyBased, r.residuals.ergotropy_based),
            (Formulation::Operational, r.residuals.operational),
        ]
        .iter()
        .filter(|(f, _)| selected.contains(f))
        .fold(0.0f64, |m, (_, x)| m.max(x.abs()));
        let mut cells: Vec<String> = [
            r.t,
            r.u,
            r.s,
            r.ergotropy,
            on(Formulation::Standard, r.q_std),
            on(Formulation::EntropyBased, r.q_ent),
            on(Formulation::ErgotropyBased, r.q_ergo),
            on(Formulation::Operational, r.q_op),
            on(Formulation::Standard, r.w_std),
            on(Formulation::EntropyBased, r.w_ent),
            on(Formulation::ErgotropyBased, r.w_ergo),
        ]
        .map(num)
        .to_vec();
        cells.extend([r.t_ergo, r.t_conv, r.t_ent].map(temperature));
        cells.push(num(r.sigma));
        cells.push(num(residual));
        csv.row(cells);
    }
    csv.into_string()
}

pub fn scan_csv(reports: &[NMReport]) -> String {
    let mut csv = Csv::new(SCAN_HEADER);
    for r in reports {
        let (a1, b1) = r.intervals.first().map_or((f64::NAN, f64::NAN), |iv| (iv.a, iv.b));
        let (r0, th0) = r.n_q.argmax;
        csv.row([
            num(r.s),
            num(r.n_q.value),
            num(r.n_ent.value),
            num(r.n_std.value),
            r.intervals.len().to_string(),
            num(a1),
            num(b1),
            u8::from(r.truncated).to_string(),
            num(r0),
            num(th0),
        ]);
    }
    csv.into_string()
}

/// Gnuplot script plotting `columns` of `csv` against its first column.
pub fn plot_script(title: &str, csv: &str, columns: &[(usize, &str)], extra: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# regenerate with: gnuplot {}.gp", title);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile missing 'nan'");
    let _ = writeln!(s, "set key autotitle columnhead");
    let _ = writeln!(s, "set terminal pngcairo size 900,600");
    let _ = writeln!(s, "set output '{}.png'", title);
    let _ = writeln!(s, "set title '{}'", title);
    for line in extra {
        let _ = writeln!(s, "{line}");
    }
    let plots: Vec<String> = columns
        .iter()
        .map(|(c, label)| format!("'{csv}' using 1:{c} with lines title '{label}'"))
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}
