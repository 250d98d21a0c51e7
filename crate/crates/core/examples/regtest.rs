//! Quick registry smoke run (development helper).
use freemap_core::registry::{format_report, repro_case, ReproReport};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases = if args.is_empty() {
        vec!["circle".into(), "t2".into(), "t3".into(), "collar".into()]
    } else {
        args
    };
    for case in cases {
        match repro_case(&case) {
            Ok(r) => {
                let all = r.pass;
                print!("{}", format_report(&ReproReport { cases: vec![r], all_pass: all }));
            }
            Err(e) => println!("case {case}: ERROR {e}"),
        }
    }
}
