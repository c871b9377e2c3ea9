"""High-precision constants frozen before the implementation was written.

Each value was computed twice, once with mpmath at 70 digits and once with
the standard-library ``decimal`` module at 80 digits using a Machin series
for pi, and the two agree to all digits shown.
"""

PI = "3.14159265358979323846264338327950288419716939937510582097494"
EXP_INV_PI = "1.37480222743935863178282187920965725698630775946736666544176"
PI_EXP_INV_PI = "4.31906857786237313860816043725789440664087565082906482964568"
PI_SQ = "9.86960440108935861883449099987615113531369940724079062641335"
PI_SQ_EXP_INV_PI = "13.5687541145629473410756401467970376334785059980678748620260"
PI_SQ_JUMP = "3.69914971347358872224114914692088649816480659082708423561270"
INV_PI = "0.318309886183790671537767526745028724068919291480912897495335"
