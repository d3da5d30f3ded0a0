//! Towers, transversals, and generator words: the classical bookkeeping
//! every circuit is built from.
//!
//! ```sh
//! cargo run --release --example towers_and_words
//! ```

use gqft::group::{Group, GroupSpec};

fn show(spec: GroupSpec) {
    let group = Group::build(&spec).unwrap();
    let tower = group.tower();
    println!("=== {} (order {}) ===", group.spec().id(), group.order());
    for level in 1..=group.num_levels() {
        let t: Vec<String> = tower
            .transversal(level)
            .iter()
            .map(|a| group.format(a))
            .collect();
        println!(
            "step {level}: |G_{level}| = {}, transversal {{{}}}, split = {}, D_{level} = {}",
            group.level_order(level),
            t.join(", "),
            tower.is_split_step(level),
            tower.step_diameter(level)
        );
    }
    for info in tower.generators() {
        println!(
            "generator {}: level {}, centralizes G_{}, order {}",
            group.format(&info.element),
            info.level,
            info.centralized_level,
            info.order
        );
    }
    let (max_index, diameter) = group.tower_stats();
    println!("max index I = {max_index}, adapted diameter D = {diameter}");

    // Factor a few elements into transversal strings and generator words.
    for el in group.elements().iter().rev().take(2) {
        let alphas = group.coset_factorize(el).unwrap();
        let parts: Vec<String> = alphas.iter().rev().map(|a| group.format(a)).collect();
        println!("{} = {}", group.format(el), parts.join(" · "));
        for (level, alpha) in alphas.iter().enumerate().rev() {
            let word = group.transversal_word(alpha, level + 1).unwrap();
            let letters: Vec<String> = word
                .0
                .iter()
                .map(|l| {
                    let g = &tower.generators()[l.gen].element;
                    format!("{}{}", group.format(g), if l.inverse { "⁻¹" } else { "" })
                })
                .collect();
            println!(
                "  level {} representative {} = word [{}]",
                level + 1,
                group.format(alpha),
                letters.join(" ")
            );
        }
    }
    println!();
}

fn main() {
    show(GroupSpec::Symmetric { n: 4 });
    show(GroupSpec::Dihedral { p: 7 });
    show(GroupSpec::Cyclic { n: 12 });
}
