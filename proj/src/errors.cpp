#include "debtrec/errors.hpp"

namespace debtrec {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Io:
        return 3;
    case ErrorKind::InsufficientData:
        return 4;
    case ErrorKind::Validation:
    case ErrorKind::NearSingular:
    case ErrorKind::OutOfRange:
        break;
    }
    return 2;
}

}  // namespace debtrec
