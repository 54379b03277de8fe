//! Writes a VHDL multiplier for a width and degree given on the command line.
//!
//! cargo run --example emit_hdl -- 64 3 > mult.vhd

use operand_fold::hdlgen::{emit, HdlConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let m = args.next().map_or(32, |s| s.parse().expect("width"));
    let k = args.next().map_or(2, |s| s.parse().expect("degree"));
    match emit(&HdlConfig::new(m, k)) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
