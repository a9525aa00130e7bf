fn main() {
    // behave like a normal pipeline citizen: die quietly on a closed pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(cohomone::cli_main());
}
