use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kpng::bench::{markdown_table, run_dir, run_synthetic, write_csv, BenchConfig, BenchOutcome};
use kpng::bmp::encode_bmp;
use kpng::corpus::{standard_corpus, MAX_FLAT_COLORS};
use kpng::format::read_image;
use kpng::metrics::format_db;
use kpng::png::encode_png;
use kpng::{kmm_transform, CompressionLevel, CorpusSpec, EncodeOptions, FilterStrategy, GeneratorKind, KParameter, QualityReport};

/// k-modulus pre-quantization for PNG, with metrics and a size benchmark.
#[derive(Parser)]
#[command(name = "kpng", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-encode a BMP or PNG file as PNG, optionally applying k-MM first.
    Convert {
        /// Quantization step (2..25); omit for a plain lossless re-encode.
        #[arg(long)]
        k: Option<KParameter>,
        #[command(flatten)]
        encode: EncodeArgs,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print MSE, PSNR and SSIM between two images.
    Metrics { a: PathBuf, b: PathBuf },
    /// Compare BMP, PNG and k-PNG sizes over a corpus and write a CSV report.
    Bench {
        /// Use the built-in synthetic corpus (the default when --dir is absent).
        #[arg(long, conflicts_with = "dir")]
        synthetic: bool,
        /// Directory of BMP files to measure.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = KParameter::default())]
        k: KParameter,
        #[command(flatten)]
        encode: EncodeArgs,
        /// CSV destination; a markdown table is written next to it with a .md extension.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write one synthetic BMP image into a directory.
    Synth {
        #[arg(long)]
        kind: GeneratorKind,
        /// Image size as WIDTHxHEIGHT.
        #[arg(long, value_parser = parse_size)]
        size: (u32, u32),
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Palette size for flat-shapes and mixed (1..8).
        #[arg(long, default_value_t = MAX_FLAT_COLORS, value_parser = clap::value_parser!(u8).range(1..=8))]
        colors: u8,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct EncodeArgs {
    /// Deflate effort: 0 stored, 1 fixed Huffman, 2 dynamic greedy, 3 dynamic lazy.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(0..=3))]
    level: u8,
    /// Scanline filter: none, sub, up, average, paeth or adaptive.
    #[arg(long, default_value = "adaptive")]
    filter: FilterStrategy,
}

impl EncodeArgs {
    fn options(&self) -> EncodeOptions {
        let level = CompressionLevel::from_number(self.level).expect("clap enforces 0..=3");
        EncodeOptions::new(level, self.filter)
    }
}

fn parse_size(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let dim = |v: &str| -> Result<u32, String> {
        match v.trim().parse::<u32>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("invalid dimension {v:?} in {s:?}")),
        }
    };
    Ok((dim(w)?, dim(h)?))
}

fn convert(k: Option<KParameter>, options: EncodeOptions, input: &Path, output: &Path) -> Result<()> {
    let in_size = fs::metadata(input)
        .with_context(|| format!("cannot read {}", input.display()))?
        .len();
    let img = read_image(input).with_context(|| format!("cannot decode {}", input.display()))?;
    let img = match k {
        Some(k) => kmm_transform(&img, k),
        None => img,
    };
    let bytes = encode_png(&img, &options);
    fs::write(output, &bytes).with_context(|| format!("cannot write {}", output.display()))?;
    println!("input:  {} ({in_size} bytes)", input.display());
    println!("output: {} ({} bytes)", output.display(), bytes.len());
    println!("CR:     {:.1}", in_size as f64 / bytes.len() as f64);
    Ok(())
}

fn metrics(a: &Path, b: &Path) -> Result<()> {
    let ia = read_image(a).with_context(|| format!("cannot decode {}", a.display()))?;
    let ib = read_image(b).with_context(|| format!("cannot decode {}", b.display()))?;
    let r = QualityReport::compute(&ia, &ib).context("cannot compare images")?;
    println!("{:<6} {:>12}", "metric", "value");
    println!("{:<6} {:>12.4}", "MSE", r.mse);
    println!("{:<6} {:>12}", "PSNR", format!("{} dB", format_db(r.psnr)));
    println!("{:<6} {:>12.4}", "SSIM", r.ssim);
    println!("mse={:.4} psnr={} ssim={:.4}", r.mse, r.psnr_display(), r.ssim);
    Ok(())
}

fn bench(dir: Option<&Path>, config: BenchConfig, out: &Path) -> Result<()> {
    let BenchOutcome { records, failures } = match dir {
        Some(d) => run_dir(d, &config).with_context(|| format!("cannot benchmark {}", d.display()))?,
        None => run_synthetic(&standard_corpus(), &config),
    };
    for (name, err) in &failures {
        eprintln!("warning: skipped {name}: {err}");
    }
    if records.is_empty() {
        bail!("no image could be measured ({} failures)", failures.len());
    }
    let file = fs::File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
    write_csv(&records, file).with_context(|| format!("cannot write {}", out.display()))?;
    let table = markdown_table(&records);
    let md = out.with_extension("md");
    fs::write(&md, &table).with_context(|| format!("cannot write {}", md.display()))?;
    print!("{table}");
    println!("wrote {} and {}", out.display(), md.display());
    Ok(())
}

fn synth(spec: CorpusSpec, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(format!("{}.bmp", spec.name()));
    let bytes = encode_bmp(&spec.generate());
    fs::write(&path, &bytes).with_context(|| format!("cannot write {}", path.display()))?;
    println!("{} ({} bytes)", path.display(), bytes.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Convert { k, encode, input, output } => convert(k, encode.options(), &input, &output),
        Command::Metrics { a, b } => metrics(&a, &b),
        Command::Bench { synthetic: _, dir, k, encode, out } => {
            bench(dir.as_deref(), BenchConfig { k, options: encode.options() }, &out)
        }
        Command::Synth { kind, size: (width, height), seed, colors, output } => {
            synth(CorpusSpec { kind, width, height, colors, seed }, &output)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
