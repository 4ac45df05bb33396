#pragma once

namespace authkit {

enum class Attack {
    impersonation,         // inject a message with no observation
    message_substitution,  // replace an observed message
    key_substitution,      // replace an observed key
    deception_p1,          // threshold scheme: player 1 alters their share
    deception_p2,          // threshold scheme: player 2 alters their share
};

}  // namespace authkit
