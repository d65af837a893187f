fn main() {
    let mut fields = Vec::new();
    for n in 2..=10 {
        fields.push((2, 1, n));
    }
    for n in 2..=6 {
        fields.push((3, 1, n));
    }
    for n in 2..=5 {
        fields.push((2, 2, n));
    }
    let g = redei_cli::desk_grid(&fields, 3).unwrap();
    println!("{}", serde_json::to_string_pretty(&g).unwrap());
}
