#include <doctest.h>

#include <cstdio>
#include <random>

#include "core/checkpoint.hpp"
#include "core/layers.hpp"
#include "support.hpp"

using namespace vqts::core;

TEST_CASE("checkpoint values round-trip bit-exact") {
    Rng rng(77);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    Checkpoint ckpt;
    std::vector<double> vals(257);
    for (double& v : vals) v = u(rng) * std::pow(10.0, int(u(rng)) % 9);
    ckpt.put("blob", {257}, vals);
    ckpt.meta["note"] = "round-trip";

    const std::string path = "/tmp/vqts_ckpt_test.json";
    ckpt.save(path);
    Checkpoint back = Checkpoint::load(path);
    CHECK(back.get("blob").values == vals);
    CHECK(back.meta["note"] == "round-trip");
    std::remove(path.c_str());
}

TEST_CASE("parameters restore with optimizer state") {
    Rng rng(78);
    Stack st;
    st.push(LayerSpec::conv(3, 5, "enc.c1"), rng);
    st.push(LayerSpec::batchnorm(5, "enc.b1"), rng);
    auto params = st.params();
    for (Parameter* p : params) {
        std::normal_distribution<double> n(0.0, 1.0);
        for (double& m : p->m1) m = n(rng);
        for (double& m : p->m2) m = std::fabs(n(rng));
    }

    Checkpoint ckpt;
    store_params(ckpt, params);
    const std::string path = "/tmp/vqts_params_test.json";
    ckpt.save(path);

    Rng rng2(999);
    Stack fresh;
    fresh.push(LayerSpec::conv(3, 5, "enc.c1"), rng2);
    fresh.push(LayerSpec::batchnorm(5, "enc.b1"), rng2);
    auto fresh_params = fresh.params();
    load_params(Checkpoint::load(path), fresh_params);

    for (size_t i = 0; i < params.size(); ++i) {
        CHECK(fresh_params[i]->value == params[i]->value);
        if (params[i]->trainable) {
            CHECK(fresh_params[i]->m1 == params[i]->m1);
            CHECK(fresh_params[i]->m2 == params[i]->m2);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("loading a shape-mismatched parameter fails") {
    Checkpoint ckpt;
    ckpt.put("w", {2, 2}, {1, 2, 3, 4});
    Parameter p;
    p.init("w", {4});
    CHECK_THROWS_AS(load_params(ckpt, {&p}), std::runtime_error);
}

TEST_CASE("non-finite values are rejected at save time") {
    Checkpoint ckpt;
    ckpt.put("w", {1}, {std::numeric_limits<double>::infinity()});
    CHECK_THROWS_AS(ckpt.save("/tmp/vqts_bad_ckpt.json"), std::runtime_error);
}
