use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kpng::format::read_image;
use kpng::kmodulus::kmm_transform;
use kpng::KParameter;

fn kpng(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpng")).args(args).output().expect("spawn kpng")
}

fn ok(args: &[&str]) -> String {
    let out = kpng(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = kpng(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.trim().is_empty(), "{args:?} failed silently");
    err
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn synth(dir: &Path, kind: &str, size: &str, seed: &str) -> std::path::PathBuf {
    ok(&["synth", "--kind", kind, "--size", size, "--seed", seed, "-o", p(dir)]);
    let (w, h) = size.split_once('x').unwrap();
    dir.join(format!("{kind}_{w}x{h}_s{seed}.bmp"))
}

fn metric_line(stdout: &str) -> String {
    stdout.lines().last().unwrap().to_string()
}

#[test]
fn k_output_is_smaller_and_reconverting_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let bmp = synth(dir.path(), "flat-shapes", "160x120", "4");
    let plain = dir.path().join("plain.png");
    let k1 = dir.path().join("k1.png");
    let k2 = dir.path().join("k2.png");
    let stdout = ok(&["convert", p(&bmp), "-o", p(&plain)]);
    assert!(stdout.contains("CR:"));
    ok(&["convert", "--k", "10", p(&bmp), "-o", p(&k1)]);
    ok(&["convert", "--k", "10", "--level", "2", "--filter", "paeth", p(&k1), "-o", p(&k2)]);
    assert!(fs::metadata(&k1).unwrap().len() < fs::metadata(&plain).unwrap().len());
    let original = read_image(&bmp).unwrap();
    assert_eq!(read_image(&plain).unwrap(), original);
    assert_eq!(read_image(&k1).unwrap(), read_image(&k2).unwrap());
    assert_eq!(read_image(&k1).unwrap(), kmm_transform(&original, KParameter::default()));
}

#[test]
fn out_of_range_k_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bmp = synth(dir.path(), "noise", "16x16", "1");
    let out = dir.path().join("x.png");
    for k in ["1", "26", "ten"] {
        fails(&["convert", "--k", k, p(&bmp), "-o", p(&out)]);
    }
    fails(&["convert", "--level", "4", p(&bmp), "-o", p(&out)]);
    fails(&["convert", "--filter", "median", p(&bmp), "-o", p(&out)]);
    assert!(!out.exists());
}

#[test]
fn bad_inputs_fail_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.bmp");
    fs::write(&junk, b"definitely not an image").unwrap();
    let out = dir.path().join("out.png");
    assert!(fails(&["convert", p(&junk), "-o", p(&out)]).contains("error"));
    fails(&["convert", p(&dir.path().join("missing.bmp")), "-o", p(&out)]);
}

#[test]
fn metrics_identical_and_noise() {
    let dir = tempfile::tempdir().unwrap();
    let bmp = synth(dir.path(), "noise", "64x64", "9");
    assert_eq!(metric_line(&ok(&["metrics", p(&bmp), p(&bmp)])), "mse=0.0000 psnr=inf ssim=1.0000");

    let q = dir.path().join("q.png");
    ok(&["convert", "--k", "10", p(&bmp), "-o", p(&q)]);
    let line = metric_line(&ok(&["metrics", p(&bmp), p(&q)]));
    let psnr: f64 = line.split("psnr=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((34.15..=46.25).contains(&psnr), "{line}");
}

#[test]
fn metrics_shape_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let a = synth(dir.path(), "noise", "32x32", "1");
    let b = synth(dir.path(), "noise", "32x30", "1");
    assert!(fails(&["metrics", p(&a), p(&b)]).contains("differ"));
}

#[test]
fn synth_is_deterministic() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for kind in ["flat-shapes", "gradient", "noise", "mixed"] {
        let a = synth(d1.path(), kind, "40x24", "17");
        let b = synth(d2.path(), kind, "40x24", "17");
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{kind}");
    }
    fails(&["synth", "--kind", "stripes", "--size", "4x4", "-o", p(d1.path())]);
    fails(&["synth", "--kind", "noise", "--size", "4by4", "-o", p(d1.path())]);
    fails(&["synth", "--kind", "noise", "--size", "0x4", "-o", p(d1.path())]);
}

#[test]
fn bench_directory_writes_csv_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    synth(&corpus, "flat-shapes", "64x48", "1");
    synth(&corpus, "mixed", "64x48", "2");
    fs::write(corpus.join("broken.bmp"), b"BM broken").unwrap();
    let csv = dir.path().join("report.csv");
    let out = kpng(&["bench", "--dir", p(&corpus), "--k", "10", "--out", p(&csv)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken"));

    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("name,width,height,bmp_size,png_size,png_cr,kpng_size,kpng_cr,mse,psnr,ssim"));
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("flat-shapes_64x48_s1,64,48,9270,"));
    assert!(lines[2].starts_with("mixed_64x48_s2,"));
    let md = fs::read_to_string(csv.with_extension("md")).unwrap();
    assert!(md.contains("mean (2 images)"));
}

#[test]
fn bench_empty_directory_fails() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    assert!(fails(&["bench", "--dir", p(dir.path()), "--out", p(&csv)]).contains("no BMP files"));
    fails(&["bench", "--dir", p(&dir.path().join("nope")), "--out", p(&csv)]);
}

#[test]
fn bench_synthetic_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("synthetic.csv");
    let stdout = ok(&["bench", "--synthetic", "--level", "1", "--filter", "up", "--out", p(&csv)]);
    assert!(stdout.contains("| flat-shapes_512x512_s1 | 512×512 | 786486 (768.1 KB) |"));
    let rows = kpng::bench::read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), kpng::corpus::standard_corpus().len());
    for r in rows.iter().filter(|r| !r.name.starts_with("gradient")) {
        assert!(r.kpng_size <= r.png_size, "{}", r.name);
    }
}
