//! Prints the size/quality table for the built-in synthetic corpus.
//!
//! `cargo run --release -p kpng --example corpus_table`

use kpng::bench::{markdown_table, run_synthetic, BenchConfig};
use kpng::corpus::standard_corpus;

fn main() {
    let out = run_synthetic(&standard_corpus(), &BenchConfig::default());
    print!("{}", markdown_table(&out.records));
    println!();
    for r in &out.records {
        println!("{:<24} k-PNG/PNG ratio gain {:.2}", r.name, r.cr_gain());
    }
    for (name, err) in &out.failures {
        eprintln!("{name}: {err}");
    }
}
