//! Driving the command-line front end in-process.

use loopsplit::cli::run;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/inputs");
    let runs: [&[&str]; 5] = [
        &["describe", "d1.json"],
        &["pi", "d1.json", "--max", "6"],
        &["series", "d3.json", "--cutoff", "6"],
        &["compare", "d2_spin.json", "d2_nonspin.json"],
        &["decompose", "d0_k6.json"],
    ];
    for args in runs {
        let argv: Vec<String> = std::iter::once("loopsplit".to_string())
            .chain(args.iter().map(|a| if a.ends_with(".json") { format!("{dir}/{a}") } else { a.to_string() }))
            .collect();
        let (code, out) = run(&argv);
        println!("$ loopsplit {}  (exit {code})\n{out}", args.join(" "));
    }
    let (_, json) = run(["loopsplit", "--format", "json", "decompose", &format!("{dir}/d1.json")]);
    println!("{json}");
}
