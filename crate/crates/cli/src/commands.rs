use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use residmod::analyzer::{ground_truth_full_image, ground_truth_map, truth_to_map};
use residmod::codec::{scale_down, Analysis};
use residmod::eval::{
    embedding_rate, five_number_summary, precision_recall_at_match, psnr, rd_sweep, residual_mode,
    residual_variance, roc_auc, sweep_csv, SweepRow,
};
use residmod::{
    capacity_walk, decode, encode_detailed, read_map, read_pgm, write_map, write_pgm, Alpha,
    AnalyzerKind, BitStream, CapacityReport, Error, ExternalMaps, GrayImage, MapFile,
    PredictorKind, StegoConfig,
};
use sha2::{Digest, Sha256};

use crate::{
    AnalyzeArgs, AnalyzerArg, CapacityArgs, EmbedArgs, ExtractArgs, Failure, GenTruthArgs, Maps,
    SweepArgs,
};

type CmdResult = Result<(), Failure>;

fn kv(key: &str, value: impl Display) {
    println!("{key}={value}");
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_pgm(path: &Path) -> Result<GrayImage, Failure> {
    read_pgm(&read_bytes(path)?).map_err(|e| Failure::Format(path.to_path_buf(), e))
}

fn load_map(path: &Path) -> Result<MapFile, Failure> {
    read_map(&read_bytes(path)?).map_err(|e| Failure::Format(path.to_path_buf(), e))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct LoadedMaps {
    score: Option<MapFile>,
    prediction: Option<MapFile>,
}

impl LoadedMaps {
    fn load(maps: &Maps) -> Result<Self, Failure> {
        Ok(Self {
            score: maps.score_map.as_deref().map(load_map).transpose()?,
            prediction: maps.pred_map.as_deref().map(load_map).transpose()?,
        })
    }

    fn external(&self) -> ExternalMaps<'_> {
        ExternalMaps {
            prediction: self.prediction.as_ref(),
            score: self.score.as_ref(),
        }
    }

    fn predictor(&self) -> PredictorKind {
        if self.prediction.is_some() {
            PredictorKind::ExternalMap
        } else {
            PredictorKind::Interp
        }
    }
}

fn alpha(value: u32) -> Result<Alpha, Failure> {
    Alpha::new(value).map_err(|e| Failure::Usage(e.to_string()))
}

fn require_score_map(analyzer: AnalyzerArg, maps: &Maps) -> CmdResult {
    if analyzer == AnalyzerArg::Map && maps.score_map.is_none() {
        return Err(Failure::Usage("--analyzer map needs --score-map".into()));
    }
    Ok(())
}

fn print_capacity(cap: &CapacityReport) {
    kv("query_pixels", cap.query_count);
    kv("carriers", cap.carrier_count);
    kv("zero_residuals", cap.zero_count);
    kv("min_bits", cap.min_bits);
    kv("register_flags", cap.register_len);
    kv("register_bits", cap.register_bits);
    kv("guaranteed_message_bits", cap.guaranteed_message_bits());
    kv(
        "expected_message_bits",
        format!("{:.1}", cap.expected_message_bits()),
    );
}

fn format_db(db: f64) -> String {
    if db.is_infinite() {
        "inf".into()
    } else {
        format!("{db:.4}")
    }
}

pub fn embed(args: EmbedArgs) -> CmdResult {
    require_score_map(args.analyzer, &args.maps)?;
    if args.analyzer == AnalyzerArg::Oracle && args.export_route_map.is_none() {
        return Err(Failure::Usage(
            "--analyzer oracle needs --export-route-map; the decoder cannot rebuild the oracle route"
                .into(),
        ));
    }
    let message_bytes = match (&args.message, &args.hex) {
        (Some(path), _) => read_bytes(path)?,
        (None, Some(h)) => {
            hex::decode(h.trim()).map_err(|e| Failure::Usage(format!("--hex: {e}")))?
        }
        (None, None) => unreachable!("clap requires --message or --hex"),
    };
    let cover = load_pgm(&args.cover)?;
    let loaded = LoadedMaps::load(&args.maps)?;
    let maps = loaded.external();
    let cfg = StegoConfig::new(alpha(args.alpha)?, args.analyzer.into(), loaded.predictor());
    let message = BitStream::from_bytes(&message_bytes);

    let out = match encode_detailed(&cover, &message, &cfg, &maps) {
        Ok(out) => out,
        Err(e @ Error::CapacityExceeded { .. }) => {
            kv("message_bits", message.len());
            if let Ok(cap) = capacity_walk(&cover, &cfg, &maps) {
                print_capacity(&cap);
            }
            return Err(e.into());
        }
        Err(e) => return Err(e.into()),
    };
    write_bytes(&args.out, &write_pgm(&out.stego))?;

    if let Some(path) = &args.export_route_map {
        let analysis = Analysis::new(&out.processed, &cfg, &maps)?;
        let truth = ground_truth_full_image(&analysis.residuals, &analysis.partition, cfg.alpha)?;
        let map = truth_to_map(&truth, cover.width(), cover.height())?;
        write_bytes(path, &write_map(&map))?;
        kv("route_map", path.display());
    }

    kv("width", cover.width());
    kv("height", cover.height());
    kv("alpha", cfg.alpha.get());
    kv("analyzer", cfg.analyzer.name());
    kv("message_bytes", message_bytes.len());
    kv("message_bits", message.len());
    kv("frame_bits", out.frame_bits);
    kv("pixels_visited", out.pixels_visited);
    kv(
        "actual_bpp",
        format!("{:.6}", embedding_rate(message.len(), &cover)),
    );
    kv("psnr_db", format_db(psnr(&cover, &out.stego)?));
    print_capacity(&out.capacity);
    Ok(())
}

pub fn extract(args: ExtractArgs) -> CmdResult {
    require_score_map(args.analyzer, &args.maps)?;
    // the exported oracle route is just a score map at the decoder
    let analyzer = match args.analyzer {
        AnalyzerArg::Oracle if args.maps.score_map.is_none() => {
            return Err(Failure::Usage(
                "--analyzer oracle needs the exported route as --score-map".into(),
            ))
        }
        AnalyzerArg::Oracle => AnalyzerKind::ExternalMap,
        other => other.into(),
    };
    let stego = load_pgm(&args.stego)?;
    let loaded = LoadedMaps::load(&args.maps)?;
    let cfg = StegoConfig::new(alpha(args.alpha)?, analyzer, loaded.predictor());
    let (restored, message) = decode(&stego, &cfg, &loaded.external())?;
    // embed only writes whole bytes; anything else means the flags differ
    if message.len() % 8 != 0 {
        return Err(Error::CorruptStego(format!(
            "decoded {} message bits, not a whole number of bytes; check --alpha, --analyzer and maps",
            message.len()
        ))
        .into());
    }

    let image_bytes = write_pgm(&restored);
    let message_bytes = message.to_bytes();
    write_bytes(&args.out_image, &image_bytes)?;
    write_bytes(&args.out_message, &message_bytes)?;
    kv("message_bits", message.len());
    kv("message_bytes", message_bytes.len());
    kv("message_sha256", sha256_hex(&message_bytes));
    kv("restored_sha256", sha256_hex(&image_bytes));
    Ok(())
}

pub fn analyze(args: AnalyzeArgs) -> CmdResult {
    require_score_map(args.analyzer, &args.maps)?;
    let cover = load_pgm(&args.cover)?;
    let loaded = LoadedMaps::load(&args.maps)?;
    let maps = loaded.external();
    let cfg = StegoConfig::new(alpha(args.alpha)?, args.analyzer.into(), loaded.predictor());
    let (processed, _) = scale_down(&cover, cfg.alpha);
    let analysis = Analysis::new(&processed, &cfg, &maps)?;
    let scores = analysis.scores(&processed, &cfg, &maps)?;
    let truth = ground_truth_map(&analysis.residuals, cfg.alpha);
    let carriers = truth.iter().filter(|&&t| t).count();

    kv("analyzer", cfg.analyzer.name());
    kv("query_pixels", truth.len());
    kv("carriers", carriers);
    kv(
        "carrier_fraction",
        format!("{:.6}", carriers as f64 / truth.len() as f64),
    );
    match roc_auc(&scores, &truth) {
        Ok(roc) => kv("auc", format!("{:.6}", roc.auc)),
        Err(_) => kv("auc", "undefined"),
    }
    match precision_recall_at_match(&scores, &truth) {
        Ok((p, r)) => {
            kv("precision_at_match", format!("{p:.6}"));
            kv("recall_at_match", format!("{r:.6}"));
        }
        Err(_) => kv("precision_at_match", "undefined"),
    }
    let res = &analysis.residuals;
    kv(
        "residual_variance",
        format!("{:.6}", residual_variance(res, None)?),
    );
    if carriers > 0 {
        kv(
            "carrier_residual_variance",
            format!("{:.6}", residual_variance(res, Some(&truth))?),
        );
    }
    if let Some(mode) = residual_mode(res) {
        kv("residual_mode", mode);
    }
    let values: Vec<f64> = res.values().iter().map(|&e| f64::from(e)).collect();
    let s = five_number_summary(&values)?;
    kv(
        "residual_five_number",
        format!("{},{},{},{},{}", s.min, s.q1, s.median, s.q3, s.max),
    );
    Ok(())
}

pub fn capacity(args: CapacityArgs) -> CmdResult {
    let cover = load_pgm(&args.cover)?;
    let maps = Maps {
        score_map: None,
        pred_map: args.pred_map,
    };
    let loaded = LoadedMaps::load(&maps)?;
    let cfg = StegoConfig::new(alpha(args.alpha)?, AnalyzerKind::Raster, loaded.predictor());
    let cap = capacity_walk(&cover, &cfg, &loaded.external())?;
    kv("width", cover.width());
    kv("height", cover.height());
    kv("alpha", cfg.alpha.get());
    print_capacity(&cap);
    Ok(())
}

fn corpus_images(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Io(dir.to_path_buf(), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Failure::Io(dir.to_path_buf(), e))?.path();
        let is_pgm = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("pgm"));
        if is_pgm && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Usage(format!(
            "{}: no .pgm files in corpus",
            dir.display()
        )));
    }
    Ok(paths)
}

pub fn sweep(args: SweepArgs) -> CmdResult {
    for &a in &args.analyzers {
        require_score_map(a, &args.maps)?;
    }
    let alphas = args
        .alphas
        .iter()
        .map(|&a| alpha(a))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = args.rates.iter().find(|r| !r.is_finite() || **r < 0.0) {
        return Err(Failure::Usage(format!("invalid rate {bad}")));
    }
    let paths = match (&args.cover, &args.corpus) {
        (Some(cover), _) => vec![cover.clone()],
        (None, Some(dir)) => corpus_images(dir)?,
        (None, None) => unreachable!("clap requires --cover or --corpus"),
    };
    let loaded = LoadedMaps::load(&args.maps)?;
    let maps = loaded.external();

    let mut rows = Vec::new();
    for path in &paths {
        let img = load_pgm(path)?;
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        for &analyzer in &args.analyzers {
            for &a in &alphas {
                let cfg = StegoConfig::new(a, analyzer.into(), loaded.predictor());
                for point in rd_sweep(&img, &cfg, &args.rates, &maps, args.seed)? {
                    rows.push(SweepRow {
                        image: name.clone(),
                        analyzer: cfg.analyzer,
                        alpha: a.get(),
                        point,
                    });
                }
            }
        }
    }
    write_bytes(&args.out, sweep_csv(&rows)?.as_bytes())?;
    kv("images", paths.len());
    kv("rows", rows.len());
    kv(
        "failed_points",
        rows.iter().filter(|r| r.point.psnr.is_none()).count(),
    );
    kv("seed", format!("{:#018x}", args.seed));
    kv("out", args.out.display());
    Ok(())
}

pub fn gen_truth(args: GenTruthArgs) -> CmdResult {
    let cover = load_pgm(&args.cover)?;
    let maps = Maps {
        score_map: None,
        pred_map: args.pred_map,
    };
    let loaded = LoadedMaps::load(&maps)?;
    let cfg = StegoConfig::new(alpha(args.alpha)?, AnalyzerKind::Oracle, loaded.predictor());
    // computed on the scaled cover so the file also serves as the decodable
    // oracle route
    let (processed, _) = scale_down(&cover, cfg.alpha);
    let analysis = Analysis::new(&processed, &cfg, &loaded.external())?;
    let truth = ground_truth_full_image(&analysis.residuals, &analysis.partition, cfg.alpha)?;
    write_bytes(
        &args.out,
        &write_map(&truth_to_map(&truth, cover.width(), cover.height())?),
    )?;
    let ones = truth.iter().filter(|&&t| t).count();
    kv("width", cover.width());
    kv("height", cover.height());
    kv("alpha", cfg.alpha.get());
    kv("positives", ones);
    kv(
        "positive_fraction",
        format!("{:.6}", ones as f64 / truth.len() as f64),
    );
    Ok(())
}
