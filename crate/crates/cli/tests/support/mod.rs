#![allow(dead_code)]

use std::path::PathBuf;

use ordfield_cli::run_command;

/// Fixed invocations; each is recorded once per output format.
pub const CASES: [(&str, &[&str]); 20] = [
    ("classify_geometric", &["classify", "t/(1-t)", "--field=laurent"]),
    ("compare_x_x2", &["compare", "x", "x^2", "--field=ratfunc-inf"]),
    ("sqrt_iter_two", &["probe", "sqrt-iter", "2", "--tol=1/1000"]),
    ("eval_pole", &["eval", "1/(t-t^2)", "--field=laurent"]),
    ("eval_lc_root", &["eval", "sqrt(1+t^(1/2))", "--field=lc", "--trunc=3"]),
    ("classify_lc_infinite", &["classify", "t^(-1/3) + 3", "--field=lc"]),
    ("val_lc", &["val", "t^(2/3) + t", "--field=lc"]),
    ("dist_laurent", &["dist", "1+t", "1+t+t^3"]),
    ("classify_ratfunc_zero", &["classify", "(1+t)/t^2", "--field=ratfunc-zero"]),
    ("sqrt_square", &["sqrt", "4 + 4*t + t^2"]),
    ("dyadic_sup_root_two", &["probe", "dyadic-sup", "sq", "2", "--hi=2", "--levels=4"]),
    ("ivt_cubic", &["probe", "ivt", "x^3-2*x-5", "--lo=2", "--hi=3", "--iters=30"]),
    ("bw_harmonic", &["probe", "bw", "0", "1", "1/2", "1/3", "1/4", "1/5", "--lo=0", "--hi=1", "-k", "3"]),
    ("open_fip", &["probe", "open-fip", "--rho=t", "--", "-t,t", "-1,2*t"]),
    ("cantor", &["probe", "cantor", "0,1", "1/2,2", "t,1"]),
    ("cauchy_partial_sums", &["probe", "cauchy", "1", "1+t", "1+t+t^2", "1+t+t^2+t^3", "--eps=t^2"]),
    ("archimedean_pole", &["probe", "archimedean", "1/t", "--scan-bound=1000"]),
    ("naturals_bounded", &["probe", "naturals-bounded", "--n=1000"]),
    ("domain_error", &["eval", "t/(t-t)"]),
    ("parse_error", &["eval", "1 + (t"]),
];

pub const FORMATS: [&str; 2] = ["text", "json"];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Exit code, stdout and stderr of one invocation, as stored on disk.
pub fn transcript(args: &[&str], format: &str) -> String {
    let argv: Vec<String> =
        std::iter::once(format!("--format={format}")).chain(args.iter().map(|s| s.to_string())).collect();
    let out = run_command(&argv);
    format!(
        "$ ordfield {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        argv.join(" "),
        out.code,
        out.stdout,
        out.stderr
    )
}

pub fn golden_path(name: &str, format: &str) -> PathBuf {
    golden_dir().join(format!("{name}.{format}.out"))
}

/// Names of the invocations whose output differs from the stored file.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (name, args) in CASES {
        for format in FORMATS {
            let got = transcript(args, format);
            let path = golden_path(name, format);
            match std::fs::read_to_string(&path) {
                Ok(want) if want == got => {}
                _ => bad.push(format!("{name}.{format}")),
            }
        }
    }
    bad
}
