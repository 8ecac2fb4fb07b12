//! Driving the command-line front end in-process: generate an instance,
//! solve it and certify the answer with its own closed bolt.

use bolt_approx::cli::{self, Report};

fn call(args: &[&str]) -> Report {
    let mut out = Vec::new();
    let argv = std::iter::once("bolt-approx").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut std::io::stderr());
    assert_eq!(code, cli::EXIT_OK, "{args:?}");
    serde_json::from_slice(&out).expect("one JSON report")
}

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join(format!("bolt-approx-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();

    call(&["gen", "grid", "--nx", "5", "--ny", "5", "--fn", "runge", "--output", &path("inst.json")]);
    let solved = call(&["solve", &path("inst.json")]);
    println!("solve:   E(f) = {:.6}", solved.error.unwrap_or_default());

    if let Some(bolt) = &solved.bolt {
        std::fs::write(path("bolt.json"), serde_json::to_string(bolt)?)?;
        std::fs::write(path("u.json"), serde_json::to_string(solved.witness.as_ref().unwrap())?)?;
        let cert = call(&["certify", &path("inst.json"), "--bolt", &path("bolt.json"), "--u", &path("u.json")]);
        println!("certify: bound = {:.6}", cert.bound.unwrap_or_default());
        let check = call(&["check-best", &path("inst.json"), "--u", &path("u.json")]);
        println!("check:   best = {:?}", check.best);
    }
    std::fs::remove_dir_all(&dir)
}
