#include <algorithm>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "prf/errors.hpp"
#include "prf/index.hpp"

namespace prf {

corpus_reader jsonl_corpus(const std::filesystem::path& file) {
    auto in = std::make_shared<std::ifstream>(file);
    if (!*in) throw error("cannot open corpus file: " + file.string());
    auto lineno = std::make_shared<size_t>(0);
    std::string name = file.string();
    return [in, lineno, name]() -> std::optional<raw_doc> {
        std::string line;
        while (std::getline(*in, line)) {
            ++*lineno;
            if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("text") ||
                !j["id"].is_string() || !j["text"].is_string())
                throw format_error(name, *lineno,
                                   "expected a JSON object with string fields 'id' and 'text'");
            return raw_doc{j["id"].get<std::string>(), j["text"].get<std::string>()};
        }
        return std::nullopt;
    };
}

corpus_reader dir_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw error("corpus directory not found: " + dir.string());
    auto files = std::make_shared<std::vector<std::filesystem::path>>();
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files->push_back(entry.path());
    std::sort(files->begin(), files->end()); // directory iteration order is unspecified
    auto next = std::make_shared<size_t>(0);
    return [files, next]() -> std::optional<raw_doc> {
        if (*next >= files->size()) return std::nullopt;
        const auto& path = (*files)[(*next)++];
        std::ifstream in(path);
        if (!in) throw error("cannot read corpus file: " + path.string());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return raw_doc{path.stem().string(), std::move(text)};
    };
}

} // namespace prf
