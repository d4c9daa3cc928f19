//! Regenerates `corpus/` from the built-in samples:
//! `cargo run -p halg-cli --example corpus -- corpus`.

use std::path::PathBuf;

use halg_cli::spec::{self, AlgebraSpec};
use halg_core::conformal::{current_conformal, quadratic_from_gd};
use halg_core::samples;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    let name = |s: &str| Some(s.to_string());
    let exam32_gd = samples::exam32_gd()?;
    let docs: Vec<(&str, AlgebraSpec)> = vec![
        (
            "exam32",
            spec::from_algebra(&samples::exam32()?, name("exam32")),
        ),
        (
            "exam33",
            spec::from_algebra(&samples::exam33_untwisted()?, name("exam33")),
        ),
        (
            "exam35-doubled",
            spec::from_algebra(&samples::exam35_doubled()?, name("exam35-doubled")),
        ),
        (
            "poisson-example",
            spec::from_algebra(&samples::poisson_constructed()?, name("poisson-example")),
        ),
        (
            "poisson-literal",
            spec::from_algebra(&samples::poisson_literal()?, name("poisson-literal")),
        ),
        (
            "svir",
            spec::from_conformal(&samples::svir()?, name("svir")),
        ),
        (
            "virasoro",
            spec::from_conformal(&samples::virasoro()?, name("virasoro")),
        ),
        (
            "current-from-exam32",
            spec::from_conformal(
                &current_conformal(&exam32_gd.algebra, "bracket", "alpha")?.value,
                name("current-from-exam32"),
            ),
        ),
        (
            "quadratic-from-exam32",
            spec::from_conformal(
                &quadratic_from_gd(&exam32_gd)?,
                name("quadratic-from-exam32"),
            ),
        ),
    ];
    for (file, doc) in docs {
        let path = dir.join(format!("{file}.halg"));
        std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
