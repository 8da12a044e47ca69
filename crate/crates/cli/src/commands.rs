use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use speckle_tde::grid::{read_csv_matrix, read_pgm, write_csv_matrix, write_pgm};
use speckle_tde::metrics::{format_db, mssim, psnr, quantized};
use speckle_tde::noise::{apply_speckle, SpeckleSpec};
use speckle_tde::solver::{self, DivergenceForm, EdgeCoupling, ModelParams, StoppingRule};
use speckle_tde::tdm::{run_tdm, TdmParams};
use speckle_tde::{phantom, presets, Error, ImageGrid, QualityReport};

use crate::args::{
    CompareArgs, ExportArgs, MetricsArgs, ModelFlags, ModelKind, NoiseArgs, PhantomArgs, RunArgs, StopKind,
};

pub const DEFAULT_FIXED_ITERS: usize = 100;
pub const DEFAULT_PSNR_ITERS: usize = 1500;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::Instability { .. }) => 3,
            Failure::Core(Error::Io { .. } | Error::Pgm { .. } | Error::Csv { .. }) => 1,
            Failure::Core(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require_file(path: &Path, what: &str) -> CmdResult {
    if path.is_file() {
        Ok(())
    } else {
        Err(usage(format!("{what} {} does not exist", path.display())))
    }
}

fn write_text(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|source| {
        Failure::Core(Error::Io {
            path: path.to_owned(),
            source,
        })
    })
}

/// Reads a PGM, or a CSV matrix when the extension is `.csv`.
fn read_image(path: &Path) -> Result<ImageGrid, Failure> {
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    Ok(if is_csv { read_csv_matrix(path)? } else { read_pgm(path)? })
}

fn metric_pair(output: &ImageGrid, clean: &ImageGrid, quantize: bool) -> Result<(f64, Option<f64>), Failure> {
    let (a, b) = if quantize {
        (quantized(output), quantized(clean))
    } else {
        (output.clone(), clean.clone())
    };
    Ok((psnr(&a, &b)?, mssim(&a, &b).ok()))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "na".into())
}

fn lookup_preset(name: &Option<String>) -> Result<Option<presets::Preset>, Failure> {
    match name {
        None => Ok(None),
        Some(n) => presets::lookup(n).map(Some).ok_or_else(|| {
            usage(format!("unknown preset {n:?}; known presets: {}", presets::names().join(", ")))
        }),
    }
}

pub fn proposed_params(flags: &ModelFlags) -> Result<ModelParams, Failure> {
    let mut p = lookup_preset(&flags.preset)?.map_or_else(ModelParams::default, |p| p.proposed);
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut p.gamma, flags.gamma);
    set(&mut p.alpha, flags.alpha);
    set(&mut p.beta, flags.beta);
    set(&mut p.iota, flags.iota);
    set(&mut p.nu, flags.nu);
    set(&mut p.xi, flags.xi);
    set(&mut p.epsilon, flags.epsilon);
    set(&mut p.cap_k, flags.cap_k);
    set(&mut p.tau, flags.tau);
    set(&mut p.intensity_peak, flags.intensity_peak);
    if flags.literal_central {
        p.divergence = DivergenceForm::LiteralCentral;
    }
    if flags.lagged_edge {
        p.coupling = EdgeCoupling::Lagged;
    }
    p.validate()?;
    Ok(p)
}

pub fn tdm_params(flags: &ModelFlags) -> Result<TdmParams, Failure> {
    for (name, v) in [("alpha", flags.alpha), ("beta", flags.beta), ("iota", flags.iota), ("epsilon", flags.epsilon)] {
        if v.is_some() {
            return Err(usage(format!("--{name} does not apply to the tdm model")));
        }
    }
    let mut p = lookup_preset(&flags.preset)?.map_or_else(TdmParams::default, |p| p.tdm);
    if let Some(v) = flags.gamma {
        p.gamma = v;
    }
    if let Some(v) = flags.nu {
        p.nu_exp = v;
    }
    if let Some(v) = flags.cap_k {
        p.k_thresh = v;
    }
    if let Some(v) = flags.xi {
        p.xi = v;
    }
    if let Some(v) = flags.tau {
        p.tau = v;
    }
    if let Some(v) = flags.intensity_peak {
        p.intensity_peak = v;
    }
    if flags.literal_central {
        p.divergence = DivergenceForm::LiteralCentral;
    }
    p.validate()?;
    Ok(p)
}

pub fn noise(args: &NoiseArgs) -> CmdResult {
    require_file(&args.input, "input")?;
    let spec = SpeckleSpec::new(args.looks, args.seed)?;
    let clean = read_pgm(&args.input)?;
    let noisy = apply_speckle(&clean, spec);
    write_pgm(&noisy, &args.out)?;
    if let Some(csv) = &args.csv {
        write_csv_matrix(&noisy, csv)?;
    }
    let (p, m) = metric_pair(&noisy, &clean, args.quantize_metrics)?;
    println!("psnr={} mssim={}", format_db(p), fmt_opt(m));
    Ok(())
}

fn parse_export(export: &Option<Vec<String>>) -> Result<Option<PathBuf>, Failure> {
    let Some(v) = export else { return Ok(None) };
    match v.as_slice() {
        [kind, path] if kind == "contour" || kind == "surface" => Ok(Some(PathBuf::from(path))),
        [kind, _] => Err(usage(format!("--export kind must be contour or surface, got {kind:?}"))),
        _ => Err(usage("--export takes a kind and a path")),
    }
}

pub fn run(args: &RunArgs) -> CmdResult {
    // Validate everything before touching the filesystem.
    require_file(&args.input, "input")?;
    if let Some(c) = &args.clean {
        require_file(c, "clean image")?;
    }
    let export = parse_export(&args.export)?;
    let stop_kind = args.stop.unwrap_or(if args.clean.is_some() { StopKind::Psnr } else { StopKind::Fixed });
    if stop_kind == StopKind::Psnr && args.clean.is_none() {
        return Err(usage("--stop psnr needs --clean"));
    }
    let iters = args.iters.unwrap_or(match stop_kind {
        StopKind::Fixed => DEFAULT_FIXED_ITERS,
        StopKind::Psnr => DEFAULT_PSNR_ITERS,
    });
    enum Model {
        Proposed(ModelParams),
        Tdm(TdmParams),
    }
    let model = match args.model {
        ModelKind::Proposed => Model::Proposed(proposed_params(&args.params)?),
        ModelKind::Tdm => Model::Tdm(tdm_params(&args.params)?),
    };

    let mut noisy = read_image(&args.input)?;
    if args.quantize_input {
        noisy = quantized(&noisy);
    }
    let clean = args.clean.as_deref().map(read_image).transpose()?;
    let mut stop = match (stop_kind, &clean) {
        (StopKind::Psnr, Some(c)) => StoppingRule::best_psnr(c.clone(), iters, args.patience as usize),
        _ => StoppingRule::fixed(iters),
    };
    if let Some(c) = &clean {
        stop.reference = Some(c.clone());
    }

    let (output, report) = match &model {
        Model::Proposed(p) => solver::run(&noisy, p, &stop)?,
        Model::Tdm(p) => run_tdm(&noisy, p, &stop)?,
    };
    log::info!("{} steps in {:.3}s", report.iterations_run, report.wall_time);

    write_pgm(&output, &args.out)?;
    if let Some(path) = &args.trace {
        write_text(path, &report.trace_csv())?;
    }
    if let Some(path) = &args.summary {
        write_text(path, &report.summary())?;
    }
    if let Some(path) = &export {
        write_csv_matrix(&output, path)?;
    }
    let (p, m) = match &clean {
        Some(c) => {
            let (p, m) = metric_pair(&output, c, args.quantize_metrics)?;
            (Some(p), m)
        }
        None => (None, None),
    };
    println!(
        "psnr={} mssim={} iters={}",
        p.map(format_db).unwrap_or_else(|| "na".into()),
        fmt_opt(m),
        report.best_iter
    );
    Ok(())
}

struct CompareRow {
    model: &'static str,
    psnr: f64,
    mssim: Option<f64>,
    best_iter: usize,
}

pub fn compare(args: &CompareArgs) -> CmdResult {
    let Some(clean_path) = &args.clean else {
        return Err(usage("compare needs --clean"));
    };
    require_file(&args.input, "input")?;
    require_file(clean_path, "clean image")?;
    let preset = lookup_preset(&args.preset)?;
    let mut proposed = preset.map_or_else(ModelParams::default, |p| p.proposed);
    let mut tdm = preset.map_or_else(TdmParams::default, |p| p.tdm);
    if args.literal_central {
        proposed.divergence = DivergenceForm::LiteralCentral;
        tdm.divergence = DivergenceForm::LiteralCentral;
    }

    let noisy = read_image(&args.input)?;
    let clean = read_image(clean_path)?;
    let stop = StoppingRule::best_psnr(clean.clone(), args.iters, args.patience as usize);

    let mut rows = Vec::new();
    let runs: [(&str, speckle_tde::Result<(ImageGrid, QualityReport)>); 2] = [
        ("proposed", solver::run(&noisy, &proposed, &stop)),
        ("tdm", run_tdm(&noisy, &tdm, &stop)),
    ];
    for (model, result) in runs {
        let (output, report) = result?;
        let (psnr, mssim) = metric_pair(&output, &clean, args.quantize_metrics)?;
        rows.push(CompareRow {
            model,
            psnr,
            mssim,
            best_iter: report.best_iter,
        });
    }

    let mut table = String::from("model,psnr,mssim,best_iter\n");
    for r in &rows {
        table.push_str(&format!("{},{},{},{}\n", r.model, format_db(r.psnr), fmt_opt(r.mssim), r.best_iter));
    }
    match &args.out {
        Some(path) => write_text(path, &table)?,
        None => print!("{table}"),
    }
    let margin = rows[0].psnr - rows[1].psnr;
    log::info!("proposed minus tdm best PSNR: {margin:.3} dB");
    Ok(())
}

pub fn metrics(args: &MetricsArgs) -> CmdResult {
    require_file(&args.input, "input")?;
    require_file(&args.clean, "clean image")?;
    let a = read_image(&args.input)?;
    let b = read_image(&args.clean)?;
    let (p, m) = metric_pair(&a, &b, args.quantize_metrics)?;
    println!("psnr={} mssim={}", format_db(p), fmt_opt(m));
    Ok(())
}

pub fn export(args: &ExportArgs) -> CmdResult {
    require_file(&args.input, "input")?;
    let grid = read_image(&args.input)?;
    write_csv_matrix(&grid, &args.out)?;
    Ok(())
}

pub fn phantom(args: &PhantomArgs) -> CmdResult {
    let grid = phantom::circle_phantom(args.width, args.height, args.background, args.foreground)?;
    write_pgm(&grid, &args.out)?;
    Ok(())
}
