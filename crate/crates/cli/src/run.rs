//! Subcommand implementations.
//!
//! Each `cmd_*` does the file and console I/O for one subcommand and
//! returns the process exit code: 0 all checks passed, 1 an assertion
//! or campaign case failed, 2 bad input (unreadable file, parse or
//! semantic error, invalid flag value), 3 the generator gave up.

use std::fs;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;

use gyrodisc::limit::{self, LimitRow};
use gyrodisc::scene::{self, Scene, Stmt};
use gyrodisc::{tol, Error};

use crate::campaign::{run_campaign, CampaignOptions};
use crate::report::{
    campaign_text, limit_text, to_json, verify_text, LimitReport, VerifyReport, SCHEMA,
};
use crate::svg;

fn load_scene(path: &Path) -> Result<Scene, i32> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(2);
        }
    };
    match scene::parse(&text) {
        Ok(s) => Ok(s),
        Err(diags) => {
            for d in &diags {
                eprintln!("{}:{d}", path.display());
            }
            Err(2)
        }
    }
}

fn write_file(path: &Path, data: &str) -> Result<(), i32> {
    fs::write(path, data).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        2
    })
}

fn check_tolerance(t: f64) -> Result<f64, i32> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        eprintln!("error: tolerance must be positive and finite, got {t}");
        Err(2)
    }
}

fn elapsed(start: Instant) {
    eprintln!("elapsed {} ms", start.elapsed().as_millis());
}

pub fn cmd_verify(
    scene_path: &Path,
    json: bool,
    tolerance: Option<f64>,
    out: Option<&Path>,
    command: String,
) -> i32 {
    let start = Instant::now();
    let mut scene = match load_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    // A tolerance override replaces every assertion bound in the scene.
    if let Some(t) = tolerance {
        let t = match check_tolerance(t) {
            Ok(t) => t,
            Err(code) => return code,
        };
        for stmt in &mut scene.stmts {
            if let Stmt::Assert { bound, .. } = stmt {
                *bound = t;
            }
        }
    }
    let run = match scene::run_scene(&scene) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = VerifyReport {
        schema: SCHEMA,
        command,
        scene: scene_path.display().to_string(),
        all_passed: run.all_passed,
        outcomes: run.outcomes,
        elapsed: start.elapsed(),
    };
    let rendered = if json {
        to_json(&report)
    } else {
        verify_text(&report)
    };
    print!("{rendered}");
    if let Some(p) = out {
        if let Err(code) = write_file(p, &rendered) {
            return code;
        }
    }
    elapsed(start);
    if report.all_passed {
        0
    } else {
        1
    }
}

pub fn cmd_random(opt: &CampaignOptions, json: bool, out_dir: &Path) -> i32 {
    let start = Instant::now();
    let report = match run_campaign(opt) {
        Ok(r) => r,
        Err(e @ Error::GeneratorExhausted { .. }) => {
            eprintln!("error: {e}");
            return 3;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let repros: Vec<(&str, &Scene)> = report
        .cases
        .iter()
        .filter_map(|c| match (&c.repro, &c.repro_scene) {
            (Some(name), Some(s)) => Some((name.as_str(), s)),
            _ => None,
        })
        .collect();
    if !repros.is_empty() {
        if let Err(e) = fs::create_dir_all(out_dir) {
            eprintln!("error: cannot create {}: {e}", out_dir.display());
            return 2;
        }
        for (name, s) in repros {
            if let Err(code) = write_file(&out_dir.join(name), &scene::unparse(s)) {
                return code;
            }
        }
    }
    let rendered = if json {
        to_json(&report)
    } else {
        campaign_text(&report)
    };
    print!("{rendered}");
    elapsed(start);
    if report.aggregate.failures == 0 {
        0
    } else {
        1
    }
}

pub fn cmd_render(scene_path: &Path, out: Option<&Path>) -> i32 {
    let scene = match load_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let data = match scene::render_data(&scene) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let image = svg::render(&data);
    match out {
        Some(p) => {
            if let Err(code) = write_file(p, &image) {
                return code;
            }
        }
        None => print!("{image}"),
    }
    0
}

/// The figure a limit sweep re-embeds: plain coordinates of the
/// vertices, the transversal's defining points, and the cevian
/// parameter if the scene has one.
struct SweepInputs {
    vertices: Vec<Complex64>,
    line: (Complex64, Complex64),
    d_param: Option<f64>,
}

fn sweep_inputs(scene: &Scene) -> Result<SweepInputs, Error> {
    let rs = scene::resolve(scene)?;
    let (l_name, _) = rs.transversal()?;
    let (p1, p2) = rs.line_endpoints(&l_name)?;
    let line = (p1.complex(), p2.complex());
    if rs.cevians.is_empty() {
        let vertices = match rs.quad() {
            Ok(cfg) => vec![
                cfg.a().complex(),
                cfg.b().complex(),
                cfg.c().complex(),
                cfg.d().complex(),
            ],
            Err(_) => {
                let (cfg, _) = rs.triangle()?;
                vec![cfg.a().complex(), cfg.b().complex(), cfg.c().complex()]
            }
        };
        Ok(SweepInputs {
            vertices,
            line,
            d_param: None,
        })
    } else {
        let (cfg, _) = rs.cevian_triangle()?;
        let d_param = rs.cevians[0].2;
        Ok(SweepInputs {
            vertices: vec![cfg.a().complex(), cfg.b().complex(), cfg.c().complex()],
            line,
            d_param: Some(d_param),
        })
    }
}

fn sweep_rows(scene: &Scene, s_values: &[f64]) -> Result<Vec<LimitRow>, Error> {
    let inputs = sweep_inputs(scene)?;
    match inputs.d_param {
        Some(t) => {
            let v: [Complex64; 3] = [inputs.vertices[0], inputs.vertices[1], inputs.vertices[2]];
            limit::transversal_limit_sweep(&v, t, inputs.line, s_values)
        }
        None => limit::euclidean_limit_sweep(&inputs.vertices, inputs.line, s_values),
    }
}

pub fn cmd_limit(
    scene_path: &Path,
    s_list: Option<Vec<f64>>,
    tolerance: Option<f64>,
    json: bool,
    out: Option<&Path>,
    command: String,
) -> i32 {
    let start = Instant::now();
    let s_values = s_list.unwrap_or_else(|| vec![10.0, 100.0, 1000.0, 10000.0]);
    if s_values.is_empty() || s_values.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        eprintln!("error: s list must be positive and finite");
        return 2;
    }
    if s_values.windows(2).any(|w| w[0] >= w[1]) {
        eprintln!("error: s list must be strictly ascending");
        return 2;
    }
    let threshold = match check_tolerance(tolerance.unwrap_or(tol::LIMIT_FINAL)) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let scene = match load_scene(scene_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rows = match sweep_rows(&scene, &s_values) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let monotone = rows
        .windows(2)
        .all(|w| w[1].euclidean_deviation < w[0].euclidean_deviation);
    let final_dev = rows.last().map(|r| r.euclidean_deviation).unwrap_or(f64::NAN);
    let report = LimitReport {
        schema: SCHEMA,
        command,
        scene: scene_path.display().to_string(),
        threshold,
        slope: limit::loglog_slope(&rows),
        rows,
        monotone,
        passed: monotone && final_dev <= threshold,
        elapsed: start.elapsed(),
    };
    let rendered = if json {
        to_json(&report)
    } else {
        limit_text(&report)
    };
    print!("{rendered}");
    if let Some(p) = out {
        if let Err(code) = write_file(p, &rendered) {
            return code;
        }
    }
    elapsed(start);
    if report.passed {
        0
    } else {
        1
    }
}
