//! Parse a TG1 graph, validate it, and look at what a broken file reports.

use textile_core::{parse, serialize, validate};

// A 2 x 2 plain weave: four crossings, eight loose thread ends.
const PLAIN: &str = "TG1 4
LABEL plain
# slot order per line: top, top, bottom, bottom
-1 6 -1 8
-1 14 1 -1
3 -1 -1 12
11 -1 5 -1
";

fn main() -> textile_core::Result<()> {
    let g = parse(PLAIN)?;
    println!(
        "{} crossings, {} nodes, {} terminals, label {:?}",
        g.crossing_count(),
        g.node_count(),
        g.terminal_count(),
        g.label()
    );
    println!("valid: {}", validate(&g).is_empty());
    print!("canonical form:\n{}", serialize(&g));

    // Node 1 claims node 6 as its peer, but node 6 points elsewhere.
    let broken = "TG1 2\n-1 6 -1 -1\n-1 -1 -1 -1\n";
    match parse(broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
