//! Drives the command-line front end in-process and prints each response.

use effan::cli::run;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

pub fn main() {
    let squares = format!("{DATA}/squares.json");
    let two_sines = format!("{DATA}/two_sines.json");
    let calls: Vec<Vec<String>> = vec![
        vec!["ua-build", "--set", "1,3", "--m", "3", "--eval", "1/2"].into_iter().map(String::from).collect(),
        vec!["sup".into(), "--poly".into(), two_sines, "--precision".into(), "20".into()],
        vec!["enum-run".into(), "--program".into(), squares, "--budget".into(), "100".into()],
        ["wave", "--profile", "bump", "--t0", "3", "--t1", "10", "--steps", "7", "--format", "csv"].map(String::from).to_vec(),
        ["semidecide", "--positive", "--x", "2^-10"].map(String::from).to_vec(),
        ["semidecide", "--positive", "--x", "0", "--budget", "1000"].map(String::from).to_vec(),
        ["search-bound", "--x", "3/8", "--rounds", "4"].map(String::from).to_vec(),
    ];
    for args in calls {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let full = std::iter::once("effan".to_string()).chain(args.iter().cloned());
        let code = run(full, &mut out, &mut err);
        println!("$ effan {}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        print!("{}", String::from_utf8_lossy(&err));
        println!("(exit {code})\n");
    }
}
