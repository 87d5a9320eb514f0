fn main() {
    let r = cgroupkit::run_full_verification(&cgroupkit::builtin_catalog(), 0, 100);
    print!("{}", r.to_text());
}
