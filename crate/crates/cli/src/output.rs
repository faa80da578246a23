//! CSV and metadata writers. Solution payloads are deterministic: floats are
//! formatted with the shortest round-trip representation, and timing lives
//! only in the metadata file.

use rbf_weno::driver::RunStats;
use rbf_weno::harness::{Euler2DRun, EulerRun, ScalarRun};
use rbf_weno::problems::ErrorReport;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub fn write_scalar_csv(path: &Path, run: &ScalarRun) -> std::io::Result<()> {
    let mut out = String::from("x,u\n");
    for (i, v) in run.values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", run.grid.center(i), v));
    }
    atomic_write(path, out.as_bytes())
}

pub fn write_euler_csv(path: &Path, run: &EulerRun) -> std::io::Result<()> {
    let mut out = String::from("x,rho,u,p\n");
    for (i, w) in run.prim.iter().enumerate() {
        out.push_str(&format!("{},{},{},{}\n", run.grid.center(i), w.rho, w.u, w.p));
    }
    atomic_write(path, out.as_bytes())
}

pub fn write_contour_csv(path: &Path, run: &Euler2DRun) -> std::io::Result<()> {
    let (nx, ny) = (run.grid.nx, run.grid.ny);
    let mut out = format!("# nx={nx} ny={ny}\nx,y,rho\n");
    for j in 0..ny {
        for i in 0..nx {
            out.push_str(&format!(
                "{},{},{}\n",
                run.grid.xcenter(i),
                run.grid.ycenter(j),
                run.prim[j * nx + i].rho
            ));
        }
    }
    atomic_write(path, out.as_bytes())
}

/// Horizontal slice at y = 0.5: mean of the two cell rows bracketing it.
pub fn write_slice_csv(path: &Path, run: &Euler2DRun) -> std::io::Result<()> {
    let (nx, ny) = (run.grid.nx, run.grid.ny);
    let jlo = ny / 2 - 1;
    let jhi = ny / 2;
    let mut out = String::from("x,rho,u,v,p\n");
    for i in 0..nx {
        let a = &run.prim[jlo * nx + i];
        let b = &run.prim[jhi * nx + i];
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            run.grid.xcenter(i),
            0.5 * (a.rho + b.rho),
            0.5 * (a.u + b.u),
            0.5 * (a.v + b.v),
            0.5 * (a.p + b.p)
        ));
    }
    atomic_write(path, out.as_bytes())
}

/// Error table in the printed style: scientific notation with three
/// significant digits and an uppercase E, orders with four decimals.
pub fn error_table_csv(report: &ErrorReport) -> String {
    let mut out = String::from("N,L1_error,L1_order,L2_error,L2_order,Linf_error,Linf_order\n");
    for row in &report.rows {
        let ord = |o: Option<f64>| o.map(|o| format!("{o:.4}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{:.2E},{},{:.2E},{},{:.2E},{}\n",
            row.n,
            row.norms.l1,
            ord(row.orders[0]),
            row.norms.l2,
            ord(row.orders[1]),
            row.norms.linf,
            ord(row.orders[2]),
        ));
    }
    out
}

#[derive(Serialize)]
pub struct RunMeta<'a> {
    pub problem: &'a str,
    pub scheme: &'a str,
    pub k: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub cfl: f64,
    pub t_end: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_mode: Option<&'a str>,
    pub monotone_guard: bool,
    pub steps: u64,
    pub dt_min: f64,
    pub dt_max: f64,
    pub eta_clamp_count: u64,
    pub wall_ms: u128,
    /// density/pressure floor over the final field (Euler runs)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_min: Option<f64>,
}

impl<'a> RunMeta<'a> {
    pub fn fill_stats(&mut self, stats: &RunStats) {
        self.steps = stats.steps;
        self.dt_min = stats.dt_min;
        self.dt_max = stats.dt_max;
        self.eta_clamp_count = stats.eta_clamps;
    }
}

pub fn write_meta(path: &Path, meta: &RunMeta) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(meta).expect("meta serializes");
    atomic_write(path, json.as_bytes())
}

/// Write via a temp file and rename so partial output never lands under the
/// final name.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
