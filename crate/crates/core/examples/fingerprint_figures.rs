//! Fingerprints of two small hand-built textiles, and one neighbourhood
//! spelled out at k = 2.

use textile_core::fingerprint::{edge_label, k_neighbourhood};
use textile_core::{fingerprint, parse};

const H1: &str = "TG1 4\n-1 6 -1 8\n-1 14 1 -1\n3 -1 -1 12\n11 -1 5 -1\n";
// Two threads that cross four times; the first crossing listed is x1.
const H2: &str = "TG1 4\n11 4 7 12\n1 14 9 2\n-1 6 -1 0\n3 -1 5 -1\n";

fn main() -> textile_core::Result<()> {
    for (name, text) in [("H1", H1), ("H2", H2)] {
        let g = parse(text)?;
        let fp = fingerprint(&g, 1)?;
        println!("F({name}), k = 1:");
        for (nb, count) in fp.sorted() {
            println!("  {nb} x{count}");
        }
    }
    let h2 = parse(H2)?;
    let nb = k_neighbourhood(&h2, 0, 2)?;
    println!("x1 at k = 2: {nb}");
    println!("  top pair    {:?}", nb.top_pair());
    println!("  bottom pair {:?}", nb.bottom_pair());
    println!("label of the link leaving node 1: {:?}", edge_label(&h2, 1)?);

    for k in 1..=4 {
        let fp = fingerprint(&h2, k)?;
        println!("k = {k}: {} distinct neighbourhoods over {} crossings", fp.distinct(), fp.total());
    }
    Ok(())
}
