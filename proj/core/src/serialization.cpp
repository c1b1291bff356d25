#include "bblc/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bblc {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& obj, const std::string& ctx, const char* name) {
    const auto it = obj.find(name);
    if (it == obj.end())
        throw Error(Errc::parse_failure, ctx + ": missing field '" + name + "'");
    try {
        return it->template get<T>();
    } catch (const json::exception& e) {
        throw Error(Errc::parse_failure, ctx + "." + name + ": " + e.what());
    }
}

const json& get_array(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end())
        throw Error(Errc::parse_failure, std::string("document: missing array '") + name + "'");
    if (!it->is_array())
        throw Error(Errc::parse_failure, std::string(name) + ": expected an array");
    return *it;
}

template <typename Entity>
void sort_and_check_dense(std::vector<Entity>& entities, const char* kind) {
    std::sort(entities.begin(), entities.end(),
              [](const Entity& a, const Entity& b) { return a.id.value < b.id.value; });
    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (entities[i].id.value != i)
            throw Error(Errc::integrity_failure,
                        std::string(kind) + " ids must be exactly 0.." +
                            std::to_string(entities.size() ? entities.size() - 1 : 0) +
                            " with no gaps or duplicates");
    }
}

} // namespace

std::string network_to_json(const Network& net) {
    json doc;
    doc["facts"] = json::array();
    for (const Fact& f : net.facts()) {
        json jf;
        jf["id"] = f.id.value;
        jf["description"] = f.description;
        jf["value"] = f.value;
        jf["container"] = f.container ? json(f.container->value) : json(nullptr);
        doc["facts"].push_back(std::move(jf));
    }
    doc["rules"] = json::array();
    for (const Rule& r : net.rules()) {
        json jr;
        jr["id"] = r.id.value;
        jr["inputs"] = json::array();
        for (const RuleInput& in : r.inputs)
            jr["inputs"].push_back({{"fact", in.fact.value}, {"required", in.required}});
        jr["outputs"] = json::array();
        for (const RuleOutput& out : r.outputs)
            jr["outputs"].push_back({{"fact", out.fact.value}, {"assigned", out.assigned}});
        doc["rules"].push_back(std::move(jr));
    }
    doc["containers"] = json::array();
    for (const Container& c : net.containers())
        doc["containers"].push_back({{"id", c.id.value}, {"description", c.description}});
    doc["links"] = json::array();
    for (const Link& l : net.links())
        doc["links"].push_back({{"id", l.id.value},
                                {"description", l.description},
                                {"start", l.start.value},
                                {"end", l.end.value}});
    return doc.dump(2) + "\n";
}

Network network_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_failure, e.what());
    }
    if (!doc.is_object())
        throw Error(Errc::parse_failure, "document: expected a JSON object");

    std::vector<Fact> facts;
    std::size_t index = 0;
    for (const json& jf : get_array(doc, "facts")) {
        const std::string ctx = "facts[" + std::to_string(index++) + "]";
        Fact f;
        f.id = FactId{get_field<std::uint32_t>(jf, ctx, "id")};
        f.description = get_field<std::string>(jf, ctx, "description");
        f.value = get_field<bool>(jf, ctx, "value");
        const auto it = jf.find("container");
        if (it == jf.end())
            throw Error(Errc::parse_failure, ctx + ": missing field 'container'");
        if (!it->is_null()) {
            try {
                f.container = ContainerId{it->get<std::uint32_t>()};
            } catch (const json::exception& e) {
                throw Error(Errc::parse_failure, ctx + ".container: " + e.what());
            }
        }
        facts.push_back(std::move(f));
    }

    std::vector<Rule> rules;
    index = 0;
    for (const json& jr : get_array(doc, "rules")) {
        const std::string ctx = "rules[" + std::to_string(index++) + "]";
        Rule r;
        r.id = RuleId{get_field<std::uint32_t>(jr, ctx, "id")};
        const auto& jins = get_field<json>(jr, ctx, "inputs");
        if (!jins.is_array()) throw Error(Errc::parse_failure, ctx + ".inputs: expected an array");
        for (const json& jin : jins)
            r.inputs.push_back(RuleInput{FactId{get_field<std::uint32_t>(jin, ctx + ".inputs", "fact")},
                                         get_field<bool>(jin, ctx + ".inputs", "required")});
        const auto& jouts = get_field<json>(jr, ctx, "outputs");
        if (!jouts.is_array()) throw Error(Errc::parse_failure, ctx + ".outputs: expected an array");
        for (const json& jout : jouts)
            r.outputs.push_back(RuleOutput{FactId{get_field<std::uint32_t>(jout, ctx + ".outputs", "fact")},
                                           get_field<bool>(jout, ctx + ".outputs", "assigned")});
        rules.push_back(std::move(r));
    }

    std::vector<Container> containers;
    index = 0;
    for (const json& jc : get_array(doc, "containers")) {
        const std::string ctx = "containers[" + std::to_string(index++) + "]";
        containers.push_back(Container{ContainerId{get_field<std::uint32_t>(jc, ctx, "id")},
                                       get_field<std::string>(jc, ctx, "description"),
                                       {}});
    }

    std::vector<Link> links;
    index = 0;
    for (const json& jl : get_array(doc, "links")) {
        const std::string ctx = "links[" + std::to_string(index++) + "]";
        links.push_back(Link{LinkId{get_field<std::uint32_t>(jl, ctx, "id")},
                             get_field<std::string>(jl, ctx, "description"),
                             ContainerId{get_field<std::uint32_t>(jl, ctx, "start")},
                             ContainerId{get_field<std::uint32_t>(jl, ctx, "end")}});
    }

    sort_and_check_dense(facts, "fact");
    sort_and_check_dense(rules, "rule");
    sort_and_check_dense(containers, "container");
    sort_and_check_dense(links, "link");

    Network net = Network::from_parts(std::move(facts), std::move(rules), std::move(containers),
                                      std::move(links), MembershipPolicy::derive_from_facts);
    const std::vector<Violation> violations = net.validate();
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "file violates network invariants (" << violations.size() << " violation"
            << (violations.size() == 1 ? "" : "s") << "): " << violations.front().detail;
        throw Error(Errc::integrity_failure, msg.str());
    }
    return net;
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open '" + path + "' for writing");
    out << network_to_json(net);
    if (!out) throw Error(Errc::io_failure, "write to '" + path + "' failed");
}

Network load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(Errc::io_failure, "read from '" + path + "' failed");
    return network_from_json(buffer.str());
}

} // namespace bblc
