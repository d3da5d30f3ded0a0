//! Schur block certificates: the sparse structure of generator images that
//! keeps twiddle gates cheap.
//!
//! ```sh
//! cargo run --release --example schur_certificates
//! ```

use gqft::group::{Group, GroupSpec};
use gqft::rep::{schur, Reps};

fn show(spec: GroupSpec) {
    let reps = Reps::build(Group::build(&spec).unwrap()).unwrap();
    let group = reps.group();
    let top = group.num_levels();
    println!("=== {} ===", group.spec().id());
    for (gen, info) in group.tower().generators().iter().enumerate() {
        println!(
            "generator {} = {}: level {}, centralizes G_{}",
            gen,
            group.format(&info.element),
            info.level,
            info.centralized_level
        );
        if info.centralized_level == 0 {
            println!("  (no certificate: centralizes only the trivial subgroup)");
            continue;
        }
        for node in 0..reps.irreps(top).len() {
            let cert = schur::schur_blocks(&reps, top, node, gen).unwrap();
            let blocks: Vec<String> = cert
                .blocks
                .iter()
                .map(|b| format!("{}x{}⊗I (×{})", b.m, b.m, b.occurrences.len()))
                .collect();
            println!(
                "  {}: blocks [{}], off-block residual {:.1e}",
                reps.irreps(top)[node].label,
                blocks.join(", "),
                cert.off_block_residual
            );
        }
    }
    println!(
        "maximum block size over annotated generators: M = {}\n",
        schur::max_multiplicity(&reps)
    );
}

fn main() {
    show(GroupSpec::Symmetric { n: 4 });
    show(GroupSpec::Dihedral { p: 13 });
}
