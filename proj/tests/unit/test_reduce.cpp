#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "futs/bisim.hpp"
#include "futs/reduce.hpp"
#include "generators.hpp"

using namespace futs;

namespace {

const MonoidDesc B = MonoidDesc::bool_or();
const MonoidDesc N = MonoidDesc::nat_plus();
const MonoidDesc Q = MonoidDesc::rat_plus();

Partition pull_back_largest(const ReductionResult& r) { return restrict_bisim(r, largest_bisimulation(r.target)); }

}  // namespace

TEST_CASE("unlabel folds labels into power weights") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto r = unlabel(fig1);
    CHECK(r.target.signature().component(0).labels == std::vector<std::string>{"*"});
    CHECK(r.target.signature().component(0).monoids.front() == MonoidDesc::power({"a", "b"}, B));
    CHECK(r.target.transition(0, "s0", "*").to_string() == "{{s0: 1/2, s1: 1/2}: {a: tt}}");
    CHECK(r.target.transition(0, "s1", "*").to_string() ==
          "{{s0: 1/6, s2: 1/2, s3: 1/3}: {b: tt}, {s1: 1/2, s2: 1/2}: {a: tt}}");
    CHECK(r.full);

    Futs idle(FutsSignature({Component{{"a", "b"}, {N}}}), {"x"});
    const auto ri = unlabel(idle);
    CHECK(ri.target.transition(0, "x", "*").is_zero());
}

TEST_CASE("tabularize pads rows on the left with nat-plus Dirac layers") {
    FutsSignature sig({Component{{"a"}, {Q}}, Component{{"b"}, {B, Q}}});
    Futs s(sig, {"x"});
    const auto phi = WeightTerm::dirac(Q, WeightTerm::leaf("x"), Weight::rational(mpq_class(1, 2)));
    s.set_transition(0, "x", "a", phi);
    const auto r = tabularize(s);
    CHECK(r.target.signature().component(0).monoids == std::vector<MonoidDesc>{N, Q});
    CHECK(r.target.signature().component(1).monoids == std::vector<MonoidDesc>{B, Q});
    CHECK(r.target.transition(0, "x", "a") == WeightTerm::dirac(N, phi, Weight::natural(1)));
    // zero transitions are wrapped too
    CHECK(r.target.transition(0, "x", "a").depth() == 2);

    const Futs fig1 = fixtures::load("fig1.futs");
    CHECK(tabularize(fig1).target.transitions(0) == fig1.transitions(0));
}

TEST_CASE("homogenize maps weights through sections of the product of all monoids") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto r = homogenize(fig1);
    const auto q = MonoidDesc::product({B, Q});
    CHECK(r.target.signature().component(0).monoids == std::vector<MonoidDesc>{q, q});
    CHECK(r.target.transition(0, "s0", "a").to_string() == "{{s0: (ff, 1/2), s1: (ff, 1/2)}: (tt, 0)}");

    const Futs w3 = fixtures::load("w3.futs");
    CHECK(homogenize(w3).target.transition(0, "x", "a").to_string() == "{y: (2)}");
}

TEST_CASE("nest fuses component and label") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto r = nest(homogenize(fig1).target);
    CHECK(r.target.signature().component(0).labels == std::vector<std::string>{"(0,a)", "(0,b)"});
    CHECK(r.target.transition(0, "s1", "(0,b)") == homogenize(fig1).target.transition(0, "s1", "b"));

    FutsSignature two({Component{{"a", "b"}, {N}}, Component{{"c"}, {N}}});
    const auto r2 = nest(Futs(two, {"x"}));
    CHECK(r2.target.signature().size() == 1);
    CHECK(r2.target.signature().component(0).labels.size() == 3);

    CHECK_THROWS_WITH(nest(fig1), Catch::Matchers::ContainsSubstring("requires tabular homogeneous"));
}

TEST_CASE("flatten turns intermediate terms into states") {
    FutsSignature sig({Component{{"*"}, {N, N}}});
    Futs s(sig, {"x"});
    const auto t = WeightTerm::dirac(N, WeightTerm::leaf("x"), Weight::natural(3));
    s.set_transition(0, "x", "*", WeightTerm::dirac(N, t, Weight::natural(2)));
    const auto r = flatten(s);
    const std::string tid = hidden_state_id(t);
    CHECK(tid == "#1:{x: 3}");
    CHECK(r.target.states() == std::vector<std::string>{tid, "x"});
    CHECK(r.target.transition(0, "x", "*").to_string() == "{`#1:{x: 3}`: 2}");
    CHECK(r.target.transition(0, tid, "*").to_string() == "{x: 3}");
    CHECK_FALSE(r.full);
    CHECK(r.hidden.at(tid) == t);
    CHECK_THROWS_WITH(flatten(fixtures::load("fig1.futs")), Catch::Matchers::ContainsSubstring("flatten requires"));
}

TEST_CASE("to_wts on the worked examples") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto r = to_wts(fig1);
    CHECK(r.target.states().size() == 9);
    CHECK(r.target.signature().simple());
    CHECK(r.target.signature().unlabelled());
    CHECK(pull_back_largest(r) == Partition::identity(fig1.states()));
    CHECK(extend_bisim(r, Partition::identity(fig1.states())) == Partition::identity(r.target.states()));

    const Futs w3 = fixtures::load("w3.futs");
    const auto rw = to_wts(w3);
    CHECK(rw.target.states() == w3.states());
    CHECK(pull_back_largest(rw).to_string() == "{ {x, x'}, {y, z} }");
    CHECK(restrict_bisim(rw, Partition::identity(rw.target.states())) == Partition::identity(w3.states()));
    const auto p = Partition::from_blocks(w3.states(), {{"x", "x'"}, {"y", "z"}});
    CHECK(extend_bisim(rw, p) == p);

    Futs idle(FutsSignature({Component{{"a"}, {N}}}), {"x"});
    const auto ri = to_wts(idle);
    CHECK(ri.target.states() == std::vector<std::string>{"x"});
    CHECK(ri.target.transition(0, "x", "*").is_zero());
    const auto one = extend_bisim(ri, Partition::one_block({"x"}));
    CHECK(one.size() == 1);
}

TEST_CASE("transport rejects non-bisimulations") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto r = to_wts(fig1);
    CHECK_THROWS_AS(extend_bisim(r, Partition::one_block(fig1.states())), PreconditionError);
    CHECK_THROWS_AS(restrict_bisim(r, Partition::one_block(r.target.states())), PreconditionError);
}

TEST_CASE("verify_reduction") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto rep = verify_reduction(to_wts(fig1));
    CHECK(rep.summary() == "15/15 relations checked, 0 violations");
    CHECK(verify_reduction(unlabel(fixtures::load("w3.futs"))).ok());

    // corrupt a weight in the target: s3 now looks like s2
    auto bad = to_wts(fig1);
    bad.target.set_transition(0, "s3", "*", bad.target.transition(0, "s2", "*"));
    const auto broken = verify_reduction(bad);
    CHECK_FALSE(broken.ok());
    CHECK_FALSE(broken.violations.front().message.empty());

    FutsSignature sig({Component{{"a"}, {N}}});
    Futs six(sig, gen::state_names(6));
    CHECK_THROWS_WITH(verify_reduction(unlabel(six)), Catch::Matchers::ContainsSubstring("exhaustive"));
    VerifyOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 20;
    CHECK(verify_reduction(unlabel(six), sampled).ok());
}

TEST_CASE("composition laws") {
    const Futs fig1 = fixtures::load("fig1.futs");
    const auto u = unlabel(fig1);
    const auto t = tabularize(u.target);
    const auto h = homogenize(t.target);
    const auto left = compose(compose(u, t), h);
    const auto right = compose(u, compose(t, h));
    CHECK(left.target.transitions(0) == right.target.transitions(0));
    CHECK(left.carrier_map.mapping == right.carrier_map.mapping);
    CHECK(left.stages.size() == right.stages.size());
    const auto unit = compose(identity_reduction(fig1), u);
    CHECK(unit.target.transitions(0) == u.target.transitions(0));
    CHECK(compose(u, identity_reduction(u.target)).kind == ReductionKind::Unlabel);
    CHECK_THROWS_AS(compose(h, u), PreconditionError);
}

TEST_CASE("every stage transports bisimilarity; carrier maps are injective and full stages bijective") {
    gen::Rng rng(6);
    for (int round = 0; round < 120; ++round) {
        const auto sig = gen::random_signature(rng, gen::Shape::Any, gen::Pool::All);
        const Futs s = gen::random_system(rng, sig, gen::uniform(rng, 1, 5), gen::coin(rng));
        const Partition big = largest_bisimulation(s);

        std::vector<ReductionResult> results{unlabel(s), tabularize(s), homogenize(s), to_wts(s)};
        const auto th = homogenize(tabularize(s).target);
        results.push_back(compose(compose(tabularize(s), homogenize(tabularize(s).target)), nest(th.target)));
        for (const auto& r : results) {
            REQUIRE(r.carrier_map.injective());
            if (r.full) REQUIRE(r.carrier_map.surjective_onto(r.target.states()));
            REQUIRE(pull_back_largest(r) == big);
            REQUIRE(restrict_bisim(r, extend_bisim(r, big)) == big);
        }
        const auto w = to_wts(s);
        for (const auto& [id, term] : w.hidden) REQUIRE(id == hidden_state_id(term));
    }
}

TEST_CASE("unlabel verified per (i,a) agrees with the product system") {
    gen::Rng rng(7);
    for (int round = 0; round < 40; ++round) {
        const auto sig = gen::random_signature(rng, gen::Shape::TwoComponent, gen::Pool::All);
        const Futs s = gen::random_system(rng, sig, gen::uniform(rng, 1, 4), true);
        const bool whole = verify_reduction(unlabel(s)).ok();
        bool parts = true;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            for (const auto& a : sig.component(i).labels) {
                Futs part(FutsSignature({Component{{a}, sig.component(i).monoids}}), s.states());
                for (const auto& x : s.states()) part.set_transition(0, x, a, s.transition(i, x, a));
                parts = parts && verify_reduction(unlabel(part)).ok();
            }
        }
        REQUIRE(whole == parts);
        REQUIRE(whole);
    }
}
