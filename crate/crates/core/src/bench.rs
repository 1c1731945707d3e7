//! Size and quality comparison of BMP, PNG and k-PNG for a set of images.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bmp::{decode_bmp, encode_bmp};
use crate::corpus::CorpusSpec;
use crate::kmodulus::{kmm_transform, KParameter};
use crate::metrics::{format_db, QualityReport};
use crate::png::{decode_png, encode_png, EncodeOptions};
use crate::raster::RasterImage;

/// One report row. Compression ratios are BMP size over encoded size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub width: u32,
    pub height: u32,
    pub bmp_size: u64,
    pub png_size: u64,
    pub png_cr: f64,
    pub kpng_size: u64,
    pub kpng_cr: f64,
    pub mse: f64,
    pub psnr: f64,
    pub ssim: f64,
}

impl BenchRecord {
    /// How much further k-PNG compresses than plain PNG.
    pub fn cr_gain(&self) -> f64 {
        self.kpng_cr / self.png_cr
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BenchConfig {
    pub k: KParameter,
    pub options: EncodeOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub images: usize,
    pub mean_png_cr: f64,
    pub mean_kpng_cr: f64,
}

impl BenchSummary {
    pub fn of(records: &[BenchRecord]) -> Option<Self> {
        if records.is_empty() {
            return None;
        }
        let n = records.len() as f64;
        Some(Self {
            images: records.len(),
            mean_png_cr: records.iter().map(|r| r.png_cr).sum::<f64>() / n,
            mean_kpng_cr: records.iter().map(|r| r.kpng_cr).sum::<f64>() / n,
        })
    }
}

/// Rows that were measured plus per-image failures, rows sorted by name.
#[derive(Debug, Default)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<(String, String)>,
}

/// Replaces anything outside `[A-Za-z0-9._-]` so names never need CSV quoting.
pub fn sanitize_name(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') { c } else { '_' })
        .collect();
    if s.is_empty() {
        "_".into()
    } else {
        s
    }
}

/// Measures one image whose uncompressed BMP occupies `bmp_size` bytes.
pub fn measure(name: &str, bmp_size: u64, img: &RasterImage, config: &BenchConfig) -> crate::Result<BenchRecord> {
    let png = encode_png(img, &config.options);
    let kpng = encode_png(&kmm_transform(img, config.k), &config.options);
    let decoded = decode_png(&kpng)?;
    let quality = QualityReport::compute(img, &decoded)?;
    let (png_size, kpng_size) = (png.len() as u64, kpng.len() as u64);
    Ok(BenchRecord {
        name: sanitize_name(name),
        width: img.width(),
        height: img.height(),
        bmp_size,
        png_size,
        png_cr: bmp_size as f64 / png_size as f64,
        kpng_size,
        kpng_cr: bmp_size as f64 / kpng_size as f64,
        mse: quality.mse,
        psnr: quality.psnr,
        ssim: quality.ssim,
    })
}

fn collect(results: Vec<(String, crate::Result<BenchRecord>)>) -> BenchOutcome {
    let mut out = BenchOutcome::default();
    for (name, r) in results {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(e) => out.failures.push((name, e.to_string())),
        }
    }
    out.records.sort_by(|a, b| a.name.cmp(&b.name));
    out.failures.sort();
    out
}

/// Benchmarks generated images; BMP sizes are those of their encoded files.
pub fn run_synthetic(specs: &[CorpusSpec], config: &BenchConfig) -> BenchOutcome {
    let results = specs
        .par_iter()
        .map(|spec| {
            let img = spec.generate();
            let bmp_size = encode_bmp(&img).len() as u64;
            (spec.name(), measure(&spec.name(), bmp_size, &img, config))
        })
        .collect();
    collect(results)
}

/// Every `.bmp` file directly inside `dir`, sorted by file name.
pub fn list_bmp_files(dir: &Path) -> crate::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("bmp")))
        .collect();
    files.sort();
    Ok(files)
}

/// Benchmarks the BMP files in `dir`, using their on-disk sizes.
pub fn run_dir(dir: &Path, config: &BenchConfig) -> crate::Result<BenchOutcome> {
    let files = list_bmp_files(dir)?;
    if files.is_empty() {
        return Err(crate::Error::EmptyCorpus(dir.to_path_buf()));
    }
    let results = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let result = (|| {
                let bytes = std::fs::read(path)?;
                let img = decode_bmp(&bytes)?;
                measure(&name, bytes.len() as u64, &img, config)
            })();
            (sanitize_name(&name), result)
        })
        .collect();
    Ok(collect(results))
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> crate::Result<()> {
    let mut w = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Never).from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> crate::Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in r.deserialize() {
        rows.push(rec?);
    }
    Ok(rows)
}

fn human_size(bytes: u64) -> String {
    let kb = bytes as f64 / 1024.0;
    if kb >= 1024.0 {
        format!("{bytes} ({:.2} MB)", kb / 1024.0)
    } else {
        format!("{bytes} ({kb:.1} KB)")
    }
}

/// Markdown table in the style of a file-size/ratio/quality comparison.
pub fn markdown_table(records: &[BenchRecord]) -> String {
    let mut s = String::new();
    s.push_str("| Image | Dimensions | BMP size | PNG size | PNG CR | k-PNG size | k-PNG CR | MSE | PSNR | SSIM |\n");
    s.push_str("|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n");
    for r in records {
        s.push_str(&format!(
            "| {} | {}×{} | {} | {} | {:.1} | {} | {:.1} | {:.4} | {} | {:.4} |\n",
            r.name,
            r.width,
            r.height,
            human_size(r.bmp_size),
            human_size(r.png_size),
            r.png_cr,
            human_size(r.kpng_size),
            r.kpng_cr,
            r.mse,
            format_db(r.psnr),
            r.ssim,
        ));
    }
    if let Some(sum) = BenchSummary::of(records) {
        s.push_str(&format!(
            "| **mean ({} images)** | | | | {:.1} | | {:.1} | | | |\n",
            sum.images, sum.mean_png_cr, sum.mean_kpng_cr
        ));
    }
    s
}
