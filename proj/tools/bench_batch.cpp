// Benchmarks the job batch runner: the serial reference implementation
// against the OpenMP worker pool, on an identical random-section workload.
// Usage: ffdyn_bench [count] [jobs]

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ffdyn/dsl.hpp"
#include "ffdyn/experiments.hpp"

using namespace ffdyn;

namespace {

double run_ms(const SelfMap& f, const ExperimentConfig& cfg, BatchMode mode,
              SectionsReport& out) {
    auto start = std::chrono::steady_clock::now();
    out = run_sections_experiment(f, cfg, mode);
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

} // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    cfg.seed = 42;
    cfg.n = 2;
    cfg.map_text = "map P2: [x^2*z, y^3, z^3]";
    cfg.iterations = 8;
    cfg.section_degree = 2;
    cfg.box = 5;
    cfg.count = argc > 1 ? std::atoi(argv[1]) : 60;
#ifdef _OPENMP
    cfg.jobs = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
#else
    cfg.jobs = argc > 2 ? std::atoi(argv[2]) : 1;
#endif
    cfg.validate();

    SelfMap f = parse_map(cfg.map_text);
    SectionsReport serial, parallel;
    const double serial_ms = run_ms(f, cfg, BatchMode::Serial, serial);
    const double parallel_ms = run_ms(f, cfg, BatchMode::Parallel, parallel);

    bool identical = serial.summary == parallel.summary &&
                     serial.records.size() == parallel.records.size();
    for (std::size_t i = 0; identical && i < serial.records.size(); ++i)
        identical = serial.records[i] == parallel.records[i];

    std::cout << "sections batch: count = " << cfg.count << ", jobs = " << cfg.jobs << '\n'
              << "  serial reference: " << serial_ms << " ms\n"
              << "  openmp pool:      " << parallel_ms << " ms\n"
              << "  speedup:          " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
              << "x\n"
              << "  outputs identical: " << (identical ? "yes" : "NO") << '\n';
    return identical ? 0 : 1;
}
