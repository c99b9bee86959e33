#pragma once

#include <stdexcept>
#include <string>

namespace prf {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition (bad counts, bad parameters).
class invalid_argument : public error {
public:
    explicit invalid_argument(const std::string& what) : error(what) {}
};

/// Duplicate document id during index construction. Carries the offending id.
class duplicate_doc_error : public error {
public:
    explicit duplicate_doc_error(const std::string& id)
        : error("duplicate doc_id: " + id), doc_id(id) {}
    std::string doc_id;
};

/// Query title analyzed to nothing (all stopwords or no word characters).
class empty_query_error : public error {
public:
    explicit empty_query_error(const std::string& topic_id)
        : error("topic " + topic_id + ": query is empty after analysis"), topic_id(topic_id) {}
    std::string topic_id;
};

/// Malformed line in a text input (qrels, run, topics, corpus). 1-based line number.
class format_error : public error {
public:
    format_error(const std::string& file, size_t line, const std::string& what)
        : error(file + ":" + std::to_string(line) + ": " + what), file(file), line(line) {}
    std::string file;
    size_t line;
};

/// Index persistence failures, each cause distinctly reported.
class index_io_error : public error {
public:
    enum class cause {
        not_found,
        bad_magic,
        version_mismatch,
        checksum_mismatch,
        corrupt,
        fingerprint_mismatch,
        write_failed,
    };

    index_io_error(cause c, const std::string& what) : error(what), why(c) {}
    cause why;
};

/// A reweighting scheme was applied to a candidate list built by a different method.
class method_mismatch_error : public error {
public:
    explicit method_mismatch_error(const std::string& what) : error(what) {}
};

} // namespace prf
