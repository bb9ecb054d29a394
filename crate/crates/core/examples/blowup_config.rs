//! Loads a blow-up from a JSON config, as the `blowup` subcommand does.
//!
//! Usage: `cargo run --example blowup_config -- data/hxh_torus.json`

use std::path::PathBuf;

use leflab::config::BlowupConfig;
use leflab::cohomring::GradedAlgebra;

fn main() -> leflab::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/hxh_torus.json"));
    let cfg = BlowupConfig::load(&path)?;
    let setup = cfg.build(16)?;
    let b = &setup.blowup;
    println!("{}: k = {}, betti {:?}", path.display(), b.k(), b.betti_numbers());
    println!("checks {:?}", setup.checks);
    Ok(())
}
