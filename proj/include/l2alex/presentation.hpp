#pragma once
#include <string>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/group_model.hpp"
#include "l2alex/word.hpp"

namespace l2alex {

struct Generator {
    int id = 0;
    std::string name;
};

enum class PresentationKind { Wirtinger, TorusStandard, Generic };

// A deficiency-1 group presentation. Relators are words over the free group
// on the generators.
struct Presentation {
    std::vector<Generator> generators;
    std::vector<Word> relators;
    PresentationKind kind = PresentationKind::Generic;

    int num_generators() const { return static_cast<int>(generators.size()); }

    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (auto& g : generators) n.push_back(g.name);
        return n;
    }

    bool deficiency_one() const { return relators.size() + 1 == generators.size(); }

    void validate() const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i].id != static_cast<int>(i))
                throw ModelMismatch("generator ids must be dense 0..k-1");
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (generators[i].name == generators[j].name)
                    throw ModelMismatch("duplicate generator name " + generators[i].name);
        for (auto& r : relators)
            for (auto& s : r.syllables())
                if (s.gen < 0 || s.gen >= num_generators())
                    throw UnknownGenerator("relator uses generator " + std::to_string(s.gen));
    }
};

// Integer weights phi(g_i) for a homomorphism to Z; words over the same
// alphabet get the induced weight.
struct PhiGrading {
    std::vector<long long> weights;

    long long weight(const Word& w) const {
        long long t = 0;
        for (auto& s : w.syllables()) {
            if (s.gen < 0 || s.gen >= static_cast<int>(weights.size()))
                throw UnknownGenerator("grading has no weight for generator " + std::to_string(s.gen));
            t += s.exp * weights[static_cast<std::size_t>(s.gen)];
        }
        return t;
    }

    // A grading only defines a homomorphism when it kills every relator.
    void validate(const Presentation& p) const {
        if (weights.size() != p.generators.size())
            throw ModelMismatch("grading size does not match presentation");
        for (auto& r : p.relators)
            if (weight(r) != 0) throw ModelMismatch("grading does not kill a relator");
    }
};

// Transports a presentation-level grading to the model alphabet. For the
// torus-knot model the canonical weights are phi(x)=q, phi(y)=p, phi(z)=pq;
// they are checked for consistency against the registered letter images.
inline PhiGrading model_grading(const ModelPtr& model, const PhiGrading& phi) {
    switch (model->kind()) {
    case GroupModel::Kind::Free:
    case GroupModel::Kind::FreeAbelian: {
        if (static_cast<int>(phi.weights.size()) != model->num_generators())
            throw ModelMismatch("grading size does not match model");
        return phi;
    }
    case GroupModel::Kind::Finite: {
        for (auto w : phi.weights)
            if (w != 0) throw ModelMismatch("a finite group admits only the zero grading");
        return PhiGrading{std::vector<long long>(static_cast<std::size_t>(model->num_generators()), 0)};
    }
    case GroupModel::Kind::TorusKnot: {
        const long long p = model->torus_p(), q = model->torus_q();
        PhiGrading mg{{q, p, p * q}};
        if (model->has_letter_images()) {
            const auto& im = model->letter_images();
            if (im.size() != phi.weights.size())
                throw ModelMismatch("letter images do not match grading size");
            for (std::size_t i = 0; i < im.size(); ++i)
                if (mg.weight(im[i]) != phi.weights[i])
                    throw ModelMismatch("grading inconsistent with registered letter images");
        } else {
            if (phi.weights.size() != 2 || phi.weights[0] != q || phi.weights[1] != p)
                throw ModelMismatch("grading inconsistent with torus-knot weights");
        }
        return mg;
    }
    }
    throw ModelMismatch("unreachable");
}

} // namespace l2alex
