#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cycdom/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "cycdom: cyclicity verdicts, maximal-domain catalogs, and weighted-kernel scans.\n"
        "Jobs are JSON files; the 'command' field selects the pipeline.  Naming the\n"
        "matching subcommand is optional and only cross-checks the job file."};

    std::string job_path, out_dir = ".", verify_path;
    unsigned threads = 1, precision = 0;
    app.add_option("--job", job_path, "path to the JSON job file");
    app.add_option("--out", out_dir, "directory artifacts are written under")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads for Gram assembly")
        ->capture_default_str();
    app.add_option("--precision", precision,
                   "override the job's working precision (decimal digits)");
    app.add_option("--verify", verify_path,
                   "replay the witness checks of an emitted certificate and exit");

    const char* commands[] = {"check-cyclic", "scan-maxdomain", "gram-dump", "catalog-info"};
    for (const char* name : commands)
        app.add_subcommand(name, std::string("run a job whose command is ") + name)
            ->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!verify_path.empty()) {
            cycdom::JobOutcome outcome = cycdom::verify_certificate(verify_path);
            std::printf("%s\n", outcome.message.c_str());
            return outcome.exit_code;
        }
        if (job_path.empty()) throw cycdom::Error("no job file given (use --job)");

        cycdom::Json job = cycdom::load_json_file(job_path, "job file");
        for (const auto* sub : app.get_subcommands()) {
            std::string expected = sub->get_name();
            std::string actual = job.value("command", "");
            if (actual != expected)
                throw cycdom::Error("job command '" + actual + "' does not match subcommand '" +
                                    expected + "'");
        }

        cycdom::RunOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads == 0 ? 1 : threads;
        opts.precision_override = precision;
        cycdom::JobOutcome outcome = cycdom::run_job(job, opts);
        std::printf("%s\n", outcome.message.c_str());
        for (const auto& artifact : outcome.artifacts)
            std::printf("wrote %s\n", artifact.c_str());
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cycdom: %s\n", e.what());
        return 1;
    }
}
