fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, report) = bfly::cli::run(&args);
    if !report.is_empty() {
        if code == 0 {
            print!("{report}");
        } else {
            eprint!("{report}");
        }
    }
    std::process::exit(code);
}
