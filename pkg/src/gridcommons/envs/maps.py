"""Default ASCII layouts, one per environment.

Layouts are configuration, not code: pass `map` to make_env to replace any
of them.  Legend is documented in gridcommons.grid.
"""

COINS = """\
WWWWWWWWWWWWW
W...........W
W.P.......P.W
W...........W
W...........W
W...........W
W...........W
W.P.......P.W
W...........W
WWWWWWWWWWWWW
"""

HARVEST_OPEN = """\
WWWWWWWWWWWWWWWWWWWWWWWWWWWWW
W...........................W
W.P...AAA.....AAA.....AAA...W
W.....AAA.....AAA.....AAA.P.W
W.....AAA.....AAA.....AAA...W
W...........................W
W.P.......................P.W
W...........................W
W.....AAA.....AAA.....AAA...W
W.....AAA.....AAA.....AAA.P.W
W.....AAA.....AAA.....AAA...W
W...........................W
W.P.......P.................W
W...........................W
WWWWWWWWWWWWWWWWWWWWWWWWWWWWW
"""

HARVEST_CLOSED = """\
WWWWWWWWWWWWWWWWWWWWWWWWW
WWWWWWWWWWW.P.WWWWWWWWWWW
W...AAA...W...W...AAA...W
W...AAA...W.P.W...AAA...W
W...AAA...W...W...AAA...W
W.........W.P.W.........W
W...AAA...W...W...AAA...W
W...AAA.....P.....AAA...W
W...AAA...W...W...AAA...W
W.........W.P.W.........W
W...AAA...W...W...AAA...W
W...AAA...W.P.W...AAA...W
W...AAA...W...W...AAA...W
WWWWWWWWWWW.P.WWWWWWWWWWW
WWWWWWWWWWWWWWWWWWWWWWWWW
"""

HARVEST_PARTNERSHIP = """\
WWWWWWWWWWWWWWWWWWWWWWWWW
WWWWWWWWWWW.P.WWWWWWWWWWW
W...AAA...W...W...AAA...W
W...AAA.....P.....AAA...W
W...AAA...W...W...AAA...W
W.........W.P.W.........W
W...AAA...W...W...AAA...W
W...AAA...W.P.W...AAA...W
W...AAA...W...W...AAA...W
W.........W.P.W.........W
W...AAA...W...W...AAA...W
W...AAA.....P.....AAA...W
W...AAA...W...W...AAA...W
WWWWWWWWWWW.P.WWWWWWWWWWW
WWWWWWWWWWWWWWWWWWWWWWWWW
"""

CLEAN_UP = """\
WWWWWWWWWWWWWWWWWWWWWW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
W.AAA..............RRW
W.AAA...........P..RRW
WWWWWWWWWWWWWWWWWWWWWW
"""

COOP_MINING = """\
WWWWWWWWWWWWWWWWWWW
W.P.....I.......P.W
W....G.......I....W
W..I......WW......W
W.....W...WW...G..W
W..........I......W
W.P..G............W
W........I......P.W
W...WW............W
W...WW....G....I..W
W.........W.......W
W.P...I...W....P..W
W.....G...........W
W....I.......G....W
W.P.........I...P.W
WWWWWWWWWWWWWWWWWWW
"""

MUSHROOMS = """\
WWWWWWWWWWWWWWW
W.P....m....P.W
W....g....b...W
W..m....o...m.W
W......P......W
W.b...g...g...W
W...m.....m...W
W.P...o.....P.W
W...b....m....W
W....g....b...W
W..m....o...m.W
W.P.........P.W
WWWWWWWWWWWWWWW
"""

GIFT_REFINEMENT = """\
WWWWWWWWWWWWWWW
W.P..T....P...W
W.............W
W...T....T..P.W
W.P...........W
W.....T.......W
W..P....T...P.W
W.............W
W.P..T....P...W
WWWWWWWWWWWWWWW
"""

PD_ARENA = """\
WWWWWWWWWWWWWWWWW
WPP...........PPW
WPP...........PPW
W...............W
W....CCC.XXX....W
W....CCC.XXX....W
W...............W
W....XXX.CCC....W
W....XXX.CCC....W
W...............W
WPP...........PPW
WPP...........PPW
WWWWWWWWWWWWWWWWW
"""

DEFAULT_MAPS = {
    "coins": COINS,
    "harvest_open": HARVEST_OPEN,
    "harvest_closed": HARVEST_CLOSED,
    "harvest_partnership": HARVEST_PARTNERSHIP,
    "clean_up": CLEAN_UP,
    "coop_mining": COOP_MINING,
    "mushrooms": MUSHROOMS,
    "gift_refinement": GIFT_REFINEMENT,
    "pd_arena": PD_ARENA,
}
