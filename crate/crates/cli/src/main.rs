fn main() {
    println!("opspace-lab");
}
