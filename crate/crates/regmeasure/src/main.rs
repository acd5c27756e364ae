use clap::Parser;

use regmeasure::cli::{run, CliArgs};

fn main() {
    let args = CliArgs::parse();
    match args.into_request().and_then(|request| run(&request)) {
        Ok(output) => println!("{output}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
