fn main() {
    std::process::exit(subgroup_census::cli::run());
}
