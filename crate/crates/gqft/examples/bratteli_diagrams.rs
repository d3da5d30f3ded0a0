//! Build the restriction diagrams of a few towers and show how paths index
//! the adapted basis.
//!
//! ```sh
//! cargo run --release --example bratteli_diagrams
//! ```

use gqft::group::{Group, GroupSpec};
use gqft::rep::Reps;

fn show(spec: GroupSpec) {
    let reps = Reps::build(Group::build(&spec).unwrap()).unwrap();
    let d = reps.diagram();
    println!("=== {} ===", reps.group().spec().id());
    for (level, nodes) in d.levels.iter().enumerate() {
        let summary: Vec<String> = nodes
            .iter()
            .map(|n| format!("{} (d={})", n.label, n.dim))
            .collect();
        println!("level {level}: {}", summary.join(", "));
    }
    let top = d.num_levels();
    println!("paths at the top level, in row order:");
    for (node, paths) in d.node_paths[top].iter().enumerate() {
        for (row, &p) in paths.iter().enumerate() {
            println!(
                "  {} row {row}: edges {:?}",
                d.levels[top][node].label,
                d.paths[top][p].digits
            );
        }
    }
    let total: usize = d.levels[top].iter().map(|n| n.dim * n.dim).sum();
    println!("Σ d² = {total} = |G| = {}\n", reps.group().order());
}

fn main() {
    show(GroupSpec::Cyclic { n: 6 });
    show(GroupSpec::Symmetric { n: 4 });
    show(GroupSpec::Dihedral { p: 5 });

    // DOT output for rendering with graphviz.
    let reps = Reps::build(Group::build(&GroupSpec::Symmetric { n: 4 }).unwrap()).unwrap();
    println!("--- DOT (S_4) ---\n{}", reps.diagram().to_dot());
}
