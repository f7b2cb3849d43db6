use moonshine::eta::{find_hauptmodul_quotient, GENUS_ZERO};

fn main() {
    let mut entries = Vec::new();
    for n in GENUS_ZERO {
        if n == 1 {
            continue;
        }
        match find_hauptmodul_quotient(n) {
            Ok(e) => {
                eprintln!("level {n}: {:?} shift {}", e.terms, e.shift);
                entries.push(serde_json::to_string(&e).unwrap());
            }
            Err(err) => eprintln!("level {n}: FAILED {err}"),
        }
    }
    println!("[\n  {}\n]", entries.join(",\n  "));
}
