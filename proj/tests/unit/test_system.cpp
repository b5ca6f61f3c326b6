#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "futs/bisim.hpp"
#include "futs/system.hpp"
#include "generators.hpp"

using namespace futs;

namespace {

bool has_issue(const Futs& s, const std::string& needle) {
    for (const auto& issue : validate(s)) {
        if (issue.message.find(needle) != std::string::npos) return true;
    }
    return false;
}

// Target whose state y behaves like Tf of the first source state mapped to y.
Futs image_candidate(const Futs& s, const CarrierMap& f, const std::vector<std::string>& target_states) {
    Futs out(s.signature(), target_states);
    for (std::size_t i = 0; i < s.signature().size(); ++i) {
        for (const auto& x : s.states()) {
            const std::string& y = f(x);
            for (const auto& a : s.signature().component(i).labels) {
                if (out.transition(i, y, a).is_zero()) out.set_transition(i, y, a, pushforward(f.mapping, s.transition(i, x, a)));
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("signature classification") {
    const MonoidDesc N = MonoidDesc::nat_plus(), B = MonoidDesc::bool_or();
    const FutsSignature wlts({Component{{"a"}, {N}}});
    CHECK(wlts.simple());
    CHECK(wlts.unlabelled());
    const FutsSignature two({Component{{"b", "a"}, {N}}, Component{{"c"}, {B, N}}});
    CHECK_FALSE(two.nested());
    CHECK_FALSE(two.combined());
    CHECK_FALSE(two.tabular());
    CHECK_FALSE(two.homogeneous());
    CHECK(two.component(0).labels == std::vector<std::string>{"a", "b"});
    CHECK(two.max_depth() == 2);
    CHECK_THROWS_AS(FutsSignature({Component{{}, {N}}}), PreconditionError);
    CHECK_THROWS_AS(FutsSignature({Component{{"a"}, {}}}), PreconditionError);
    CHECK_THROWS_AS(FutsSignature({Component{{"a", "a"}, {N}}}), PreconditionError);
}

TEST_CASE("validate") {
    const Futs fig1 = fixtures::load("fig1.futs");
    CHECK(validate(fig1).empty());

    Futs bad = fig1;
    bad.set_transition(0, "s0", "b",
                       WeightTerm::dirac(MonoidDesc::bool_or(),
                                         WeightTerm::dirac(MonoidDesc::rat_plus(), WeightTerm::leaf("s9"),
                                                           Weight::rational(1)),
                                         Weight::boolean(true)));
    CHECK(has_issue(bad, "unknown state"));

    Futs shallow = fig1;
    shallow.set_transition(0, "s0", "b", WeightTerm::dirac(MonoidDesc::rat_plus(), WeightTerm::leaf("s1"), Weight::rational(1)));
    CHECK(has_issue(shallow, "depth mismatch"));

    CHECK(has_issue(Futs(fig1.signature(), {}), "empty carrier"));
    CHECK_THROWS_AS(require_valid(shallow), PreconditionError);
}

TEST_CASE("homomorphisms") {
    const Futs fig1 = fixtures::load("fig1.futs");
    CHECK(is_homomorphism(fig1, fig1, CarrierMap::identity(fig1.states())));

    const Partition id = Partition::identity(fig1.states());
    const Futs q = quotient_system(fig1, id);
    CarrierMap kappa;
    for (const auto& x : fig1.states()) kappa.mapping[x] = id.block_id(x);
    CHECK(is_homomorphism(fig1, q, kappa));

    CarrierMap collapse{{{"s0", "s0"}, {"s1", "s1"}, {"s2", "s0"}, {"s3", "s3"}}};
    const Futs candidate = image_candidate(fig1, collapse, {"s0", "s1", "s3"});
    CHECK_FALSE(is_homomorphism(fig1, candidate, collapse));

    const Futs w3 = fixtures::load("w3.futs");
    CHECK_THROWS_AS(is_homomorphism(fig1, w3, CarrierMap::identity(fig1.states())), PreconditionError);
}

TEST_CASE("dirac_embed") {
    const Futs w3 = fixtures::load("w3.futs");
    const Futs u = dirac_embed(w3);
    CHECK(u.signature().component(0).monoids ==
          std::vector<MonoidDesc>{MonoidDesc::bool_or(), MonoidDesc::nat_plus()});
    CHECK(u.transition(0, "x", "a").to_string() == "{{y: 2}: tt}");
    CHECK(u.transition(0, "y", "a").to_string() == "{{}: tt}");
    CHECK(largest_bisimulation(u) == largest_bisimulation(w3));
    CHECK_THROWS_AS(dirac_embed(fixtures::load("fig1.futs")), PreconditionError);
}

TEST_CASE("relabel_weights") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto& row = fig1.signature().component(0);
    CHECK(relabel_weights(fig1, {{Homomorphism::identity(row.monoids[0]), Homomorphism::identity(row.monoids[1])}})
              .transitions(0) == fig1.transitions(0));

    const auto p = MonoidDesc::product(row.monoids);
    const Futs h = relabel_weights(fig1, {{Homomorphism::section(p, 0), Homomorphism::section(p, 1)}});
    CHECK(h.transition(0, "s0", "a").to_string() == "{{s0: (ff, 1/2), s1: (ff, 1/2)}: (tt, 0)}");
    CHECK(largest_bisimulation(h) == largest_bisimulation(fig1));

    CHECK_THROWS_AS(relabel_weights(fig1, {{Homomorphism::support(row.monoids[0]), Homomorphism::identity(row.monoids[1])}}),
                    PreconditionError);
}

TEST_CASE("homomorphisms compose; embeddings preserve bisimilarity") {
    gen::Rng rng(4);
    for (int round = 0; round < 200; ++round) {
        const auto sig = gen::random_signature(rng, gen::Shape::Any, gen::Pool::All);
        const Futs s = gen::random_system(rng, sig, gen::uniform(rng, 1, 5), gen::coin(rng));
        REQUIRE(validate(s).empty());
        REQUIRE(is_homomorphism(s, s, CarrierMap::identity(s.states())));

        // κ into the quotient by the largest bisimulation, then an isomorphic renaming
        const Partition big = largest_bisimulation(s);
        const Futs q = quotient_system(s, big);
        CarrierMap kappa, rename;
        for (const auto& x : s.states()) kappa.mapping[x] = big.block_id(x);
        std::vector<std::string> renamed;
        for (const auto& y : q.states()) {
            rename.mapping[y] = "r_" + y;
            renamed.push_back("r_" + y);
        }
        Futs r(q.signature(), renamed);
        for (std::size_t i = 0; i < sig.size(); ++i) {
            for (const auto& [key, t] : q.transitions(i)) r.set_transition(i, rename(key.first), key.second, pushforward(rename.mapping, t));
        }
        REQUIRE(is_homomorphism(s, q, kappa));
        REQUIRE(is_homomorphism(q, r, rename));
        REQUIRE(is_homomorphism(s, r, kappa.then(rename)));

        if (sig.simple()) REQUIRE(largest_bisimulation(dirac_embed(s)) == big);

        std::vector<std::vector<Homomorphism>> homs;
        for (const auto& c : sig.components()) {
            std::vector<Homomorphism> row;
            for (const auto& m : c.monoids) {
                const auto p = MonoidDesc::product({MonoidDesc::nat_plus(), m});
                row.push_back(Homomorphism::section(p, 1));
            }
            homs.push_back(std::move(row));
        }
        REQUIRE(largest_bisimulation(relabel_weights(s, homs)) == big);
    }
}
