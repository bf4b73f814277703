//! Drives the command-line front end in-process and prints each text report.
//! Append `--json` to any call for the machine-readable form.

use skewfree::cli::run_from_args;

fn main() {
    let calls: &[&[&str]] = &[
        &["classify", "-M", "0,1;1,1"],
        &[
            "check-free",
            "--sigma",
            "monomial:1,1;1,2",
            "--gens",
            "x,y",
            "--depth",
            "6",
        ],
        &[
            "verify-relation",
            "--sigma",
            "monomial:0,1;1,1",
            "(xt)^2(yt) = (yt)^2(xt)",
        ],
        &["henon-degrees", "--a", "1", "--b", "1", "--horizon", "6"],
        &["parity", "-M", "3,2;4,3"],
        &[
            "growth",
            "--sigma",
            "elementary:1,1,0,y^2",
            "--gens",
            "x,y,y^2,t",
            "-N",
            "20",
        ],
    ];
    for args in calls {
        let argv = std::iter::once("skewfree").chain(args.iter().copied());
        let out = run_from_args(argv);
        println!(
            "$ skewfree {}  -> exit {}\n{}\n",
            args.join(" "),
            out.code,
            out.output
        );
    }
}
