fn main() {
    println!("platbraid");
}
