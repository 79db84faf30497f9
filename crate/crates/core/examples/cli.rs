//! Drives the command-line front end in-process.

use std::io::Write;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join(format!("expd-cli-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let tuple = dir.join("worked.json");
    std::fs::File::create(&tuple)?
        .write_all(br#"{"vars": ["x", "y"], "entries": ["x^2*y", "x*y^2"]}"#)?;
    let t = tuple.to_str().expect("temporary paths are UTF-8");

    let commands: [&[&str]; 5] = [
        &["totient", "--tuple", t, "--dir", "x", "--explain"],
        &["expand", "--tuple", t, "--dir", "x", "--times", "2", "--json"],
        &["destab", "--tuple", t, "--dir", "x"],
        &["area", "--tuple", t, "--path", "x,y", "--box", "x:0:1,y:0:1"],
        &["check", "--tuple", t, "--kind", "integral", "--path", "x,y", "--box", "x:0:1,y:0:1"],
    ];
    for args in commands {
        let (code, out, err) = expd::cli::run(std::iter::once("expd").chain(args.iter().copied()));
        println!("$ expd {}  (exit {code})", args.join(" "));
        print!("{out}{err}");
    }
    std::fs::remove_dir_all(&dir)
}
