fn main() {
    let out = feynman_motives::cli::run(std::env::args_os());
    println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
    std::process::exit(out.code);
}
