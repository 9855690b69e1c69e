#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "wasep/errors.hpp"
#include "wasep/process.hpp"

using namespace wasep;

TEST_CASE("ring floor") {
    CHECK(ring_floor(200, 1.0, 1.0) == 1600);
    CHECK(ring_floor(50, 1.0, 0.5) == 1024);
    CHECK(ring_floor(1000, 1.0, 4.0) == 32000);
    CHECK(ring_floor(333, 0.0, 1.0) == 2664);
    CHECK(ring_floor(101, 1.0, 1.0) % 2 == 0);
}

TEST_CASE("process parameters") {
    const ProcessParams p(10, 1.0, 1.0, 0.3, 1.0);
    CHECK(p.gamma() == 2.0);
    CHECK(p.ring_size() == 1024);
    CHECK(p.rate_right() == doctest::Approx(60.0));
    CHECK(p.rate_left() == doctest::Approx(50.0));
    CHECK(p.drift_scale() == doctest::Approx(10.0));
    CHECK(ProcessParams(100, 1.0, 0.5, 0.3, 1.0).gamma() == doctest::Approx(1.5));
    CHECK(ProcessParams(100, 1.0, 3.0, 0.3, 1.0).gamma() == 2.0);
    CHECK(p.with_ring(2048).ring_size() == 2048);

    CHECK_THROWS_AS(ProcessParams(0, 1.0, 1.0, 0.3, 1.0), DomainError);
    CHECK_THROWS_AS(ProcessParams(10, -1.0, 1.0, 0.3, 1.0), DomainError);
    CHECK_THROWS_AS(ProcessParams(10, 1.0, 1.0, 1.5, 1.0), DomainError);
    CHECK_THROWS_AS(ProcessParams(10, 1.0, 1.0, 0.3, 0.0), DomainError);
    CHECK_THROWS_AS(ProcessParams(10, 1.0, 1.0, 0.3, 1.0, 1025), DomainError);
    CHECK_THROWS_AS(ProcessParams(10, 1.0, 1.0, 0.3, 1.0, 512), DomainError);
}

TEST_CASE("initial configurations") {
    const ProcessParams p(50, 1.0, 2.0, 0.3, 1.0, 4096);
    const Configuration a = sample_initial(p, 11, false);
    const Configuration b = sample_initial(p, 11, false);
    CHECK(a == b);
    CHECK(a.size() == 4096);
    const double density = static_cast<double>(a.particle_count()) / 4096.0;
    CHECK(std::fabs(density - 0.3) < 5.0 * std::sqrt(0.21 / 4096.0));
    const Configuration t = sample_initial(p, 11, true);
    CHECK(t.occupied(0));
    CHECK(t.index_of(0) == 2048);
    CHECK(t.label_of(0) == -2048);
    CHECK(t.index_of(-2049) == 4095);

    CHECK_THROWS_AS(Configuration(std::vector<std::uint8_t>{1, 0, 1}), DomainError);
    CHECK_THROWS_AS(Configuration(std::vector<std::uint8_t>{2, 0}), DomainError);
}

TEST_CASE("advance preserves particles and exclusion") {
    const ProcessParams p(20, 1.0, 1.0, 0.4, 1.0);
    Configuration init = sample_initial(p, 5, false);
    SimState s(p, init, Rng(6), false, all_bonds(p));
    advance(s, p, 0.5);
    CHECK(s.time() == 0.5);
    CHECK(s.config().particle_count() == init.particle_count());
    std::int64_t count = 0;
    for (auto v : s.config().occupancy()) count += v;
    CHECK(count == init.particle_count());
    CHECK(s.accepted_jumps() > 0);

    // Every bond current is tracked; the net outflow of each site matches
    // its occupation change.
    for (std::int64_t x = -p.ring_size() / 2; x < p.ring_size() / 2; ++x) {
        const std::int64_t net_in = s.bond_current(x - 1) - s.bond_current(x);
        CHECK(s.config().eta(x) - init.eta(x) == net_in);
    }
    CHECK_THROWS_AS(advance(s, p, 0.25), DomainError);
}

TEST_CASE("advance is deterministic given the seed") {
    const ProcessParams p(30, 1.0, 2.0, 0.3, 1.0);
    const Configuration init = sample_initial(p, 17, true);
    SimState a(p, init, Rng(18), true);
    SimState b(p, init, Rng(18), true);
    advance(a, p, 1.0);
    advance(b, p, 1.0);
    CHECK(a.config() == b.config());
    CHECK(a.bond_current(-1) == b.bond_current(-1));
    CHECK(a.tagged_position() == b.tagged_position());
    CHECK(a.rng() == b.rng());
}

TEST_CASE("empty and full rings do not move") {
    const ProcessParams empty(10, 1.0, 1.0, 0.0, 1.0);
    SimState a(empty, sample_initial(empty, 1, false), Rng(2), false);
    advance(a, empty, 1.0);
    CHECK(a.bond_current(-1) == 0);
    CHECK(a.accepted_jumps() == 0);

    const ProcessParams full(10, 1.0, 1.0, 1.0, 1.0);
    SimState b(full, sample_initial(full, 1, true), Rng(2), true);
    advance(b, full, 1.0);
    CHECK(b.bond_current(-1) == 0);
    CHECK(b.tagged_position() == 0);
    CHECK(centered_current(b, full) == doctest::Approx(0.0));
}

TEST_CASE("mean current matches the hydrodynamic drift") {
    // beta = 0 keeps gamma = 1, so the drift alpha n chi is large and cheap.
    const ProcessParams p(20, 1.0, 0.0, 0.3, 1.0);
    const int replicas = 400;
    std::vector<double> centered(replicas);
    for (int r = 0; r < replicas; ++r) {
        const auto seed = replica_seed(77, static_cast<std::uint64_t>(r));
        Rng rng(seed);
        Configuration init = sample_initial(p, rng, false);
        SimState s(p, std::move(init), rng, false);
        advance(s, p, 1.0);
        centered[static_cast<std::size_t>(r)] = centered_current(s, p);
    }
    const double mean = std::accumulate(centered.begin(), centered.end(), 0.0) / replicas;
    double var = 0.0;
    for (double c : centered) var += (c - mean) * (c - mean);
    var /= replicas - 1;
    CHECK(std::fabs(mean) < 5.0 * std::sqrt(var / replicas));
}

TEST_CASE("untracked bonds and missing tag") {
    const ProcessParams p(10, 1.0, 1.0, 0.3, 1.0);
    SimState s(p, sample_initial(p, 1, false), Rng(2), false, {-1, 5});
    CHECK(s.tracks(-1));
    CHECK(s.tracks(5));
    CHECK_FALSE(s.tracks(4));
    CHECK_THROWS_AS(s.bond_current(4), UntrackedBond);
    CHECK_THROWS_AS(centered_tagged(s, p), std::logic_error);

    Configuration hole(std::vector<std::uint8_t>(1024, 0));
    CHECK_THROWS_AS(SimState(p, hole, Rng(1), true), DomainError);
}

TEST_CASE("ring breach of the tagged particle") {
    // Declared horizon 1 sizes the ring; running far past it lets the lone
    // tagged particle drift beyond L/4.
    const ProcessParams p(1, 100.0, 0.0, 0.0, 1.0);
    CHECK(p.ring_size() == 1024);
    SimState s(p, sample_initial(p, 3, true), Rng(4), true);
    CHECK_THROWS_AS(advance(s, p, 10.0), RingBreach);
}
