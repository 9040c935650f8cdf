use crate::output::{num, Sink};
use crate::{Failure, Format};
use dbscale::numerics::{find_zeros, RootWindow};
use dbscale::perturbation::{krein_diff_check, lambda_of_gamma, qfunc as q_of, QForm};
use dbscale::report::RunConfig;
use dbscale::scale::{counterexample_run, scale_norms, ScaleNorms};
use dbscale::suite::{check_ids, dictionary, run_selected};
use dbscale::{c, Cplx, DbSpace, EntireFn, ExtensionHandle, GammaDomainElement, StarDomainElement, I};
use serde::Serialize;

fn space(cfg: &RunConfig) -> Result<DbSpace, Failure> {
    Ok(DbSpace::paley_wiener(cfg.a)?)
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::Runtime(e.to_string())
}

pub fn verify(cfg: &RunConfig, only: &[String], sink: &Sink) -> Result<bool, Failure> {
    let select = |id: &str| only.is_empty() || only.iter().any(|p| id.starts_with(p.as_str()));
    if !check_ids().into_iter().any(select) {
        return Err(Failure::Config(format!("no check id matches {only:?}")));
    }
    let report = run_selected(cfg, select)?;
    match sink.format {
        Format::Json => sink.json(&report)?,
        Format::Csv => {
            let mut rows = Vec::with_capacity(report.records.len());
            for r in &report.records {
                rows.push(vec![
                    r.check_id.clone(),
                    num(r.max_abs_err),
                    num(r.tol),
                    r.pass.to_string(),
                    num(r.runtime_ms),
                    serde_json::to_string(&r.params).map_err(json_err)?,
                ]);
            }
            sink.csv(&["check_id", "max_abs_err", "tol", "pass", "runtime_ms", "params"], &rows)?;
        }
    }
    Ok(report.summary.all_pass)
}

#[derive(Serialize)]
struct Spectrum {
    gamma: f64,
    zeros: Vec<f64>,
}

pub fn spectrum(cfg: &RunConfig, gammas: &[f64], sink: &Sink) -> Result<(), Failure> {
    let sp = space(cfg)?;
    let window = RootWindow::for_space(&sp, cfg.window[0], cfg.window[1])?;
    let gammas = if gammas.is_empty() { vec![cfg.gamma] } else { gammas.to_vec() };
    let mut spectra = Vec::with_capacity(gammas.len());
    for &gamma in &gammas {
        spectra.push(Spectrum { gamma, zeros: find_zeros(&sp, gamma, window)? });
    }
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "spectra": spectra })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = spectra
                .iter()
                .flat_map(|s| s.zeros.iter().enumerate().map(|(k, &x)| vec![num(s.gamma), k.to_string(), num(x)]))
                .collect();
            sink.csv(&["gamma", "index", "zero"], &rows)
        }
    }
}

pub fn kernel(cfg: &RunConfig, w: Cplx, sink: &Sink) -> Result<(), Failure> {
    let sp = space(cfg)?;
    let mut rows = Vec::new();
    for x in cfg.grid() {
        let z = Cplx::new(x, 0.0);
        let k = sp.kernel(z, w)?;
        let ks = sp.kernel_via_s(cfg.gamma, z, w)?;
        rows.push([x, k.re, k.im, ks.re, ks.im]);
    }
    let header = ["x", "k_re", "k_im", "via_s_re", "via_s_im"];
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "w": [w.re, w.im], "columns": header, "rows": rows })),
        Format::Csv => sink.csv(&header, &rows.iter().map(|r| r.iter().map(|&v| num(v)).collect()).collect::<Vec<_>>()),
    }
}

fn qfunc_rows(cfg: &RunConfig, im: f64) -> Result<Vec<[f64; 7]>, Failure> {
    if im == 0.0 || !im.is_finite() {
        return Err(Failure::Config(format!("--im must be nonzero and finite, got {im}")));
    }
    let sp = space(cfg)?;
    let mut rows = Vec::new();
    for x in cfg.grid() {
        let w = c(x, im);
        let d = q_of(&sp, w, QForm::Definitional)?;
        let q = q_of(&sp, w, QForm::ClosedForm)?;
        rows.push([x, im, d.re, d.im, q.re, q.im, (d - q).norm()]);
    }
    Ok(rows)
}

pub fn qfunc(cfg: &RunConfig, im: f64, sink: &Sink) -> Result<(), Failure> {
    let rows = qfunc_rows(cfg, im)?;
    let header = ["w_re", "w_im", "definitional_re", "definitional_im", "closed_re", "closed_im", "abs_diff"];
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "columns": header, "rows": rows })),
        Format::Csv => sink.csv(&header, &rows.iter().map(|r| r.iter().map(|&v| num(v)).collect()).collect::<Vec<_>>()),
    }
}

#[derive(Serialize)]
struct KreinOut {
    gamma: f64,
    w_re: f64,
    w_im: f64,
    lambda: f64,
    max_err: f64,
    lambda_err: f64,
}

pub fn krein(cfg: &RunConfig, w: Cplx, sink: &Sink) -> Result<(), Failure> {
    let sp = space(cfg)?;
    let grid: Vec<Cplx> = cfg.grid().into_iter().map(|x| Cplx::new(x, 0.0)).collect();
    let rep = krein_diff_check(&sp, cfg.gamma, w, &EntireFn::kernel(0.0.into()), &grid)?;
    let out = KreinOut {
        gamma: cfg.gamma,
        w_re: w.re,
        w_im: w.im,
        lambda: lambda_of_gamma(&sp, cfg.gamma)?,
        max_err: rep.max_err,
        lambda_err: rep.lambda_err,
    };
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "krein": out })),
        Format::Csv => sink.single_row(&out),
    }
}

pub fn counterexample(cfg: &RunConfig, sink: &Sink) -> Result<(), Failure> {
    let rep = counterexample_run(cfg.a)?;
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "counterexample": rep })),
        Format::Csv => sink.single_row(&rep),
    }
}

pub fn norms(cfg: &RunConfig, count: usize, sink: &Sink) -> Result<(), Failure> {
    if count == 0 {
        return Err(Failure::Config("--count must be positive".into()));
    }
    let sp = space(cfg)?;
    let ext = ExtensionHandle::new(&sp, cfg.gamma);
    let dict = dictionary(&sp, cfg.gamma)?;
    let gdict: Vec<GammaDomainElement> =
        dict.iter().take(count).map(|f| ext.resolvent(I, f)).collect::<Result<_, _>>()?;
    let sdict: Vec<StarDomainElement> =
        gdict.iter().map(|g| StarDomainElement::from_domain(&ext, g)).collect::<Result<_, _>>()?;
    let table: Vec<ScaleNorms> = gdict.iter().map(|g| scale_norms(&ext, g, &sdict, &gdict)).collect::<Result<_, _>>()?;
    match sink.format {
        Format::Json => sink.json(&serde_json::json!({ "config": cfg, "norms": table })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .iter()
                .enumerate()
                .map(|(j, n)| {
                    let mut r = vec![j.to_string()];
                    r.extend([n.norm, n.plus2, n.plus_f, n.minus_f_lower, n.minus2_lower].map(num));
                    r
                })
                .collect();
            sink.csv(&["index", "norm", "plus2", "plus_f", "minus_f_lower", "minus2_lower"], &rows)
        }
    }
}
