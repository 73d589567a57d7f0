// Minimal syllagraph bundle viewer. All route data is precomputed in the bundle;
// this script only draws it and toggles classes.
(function () {
  "use strict";

  var SVG_NS = "http://www.w3.org/2000/svg";
  var CELL_W = 180, CELL_H = 90, GUTTER = 40, MARGIN = 40;
  var STROKE = { derivative: "#cc0000", common_part: "#1f5fbf", perspective: "#2e8b3e" };
  var FILL = { as: "#ffe8b0", ad: "#d6e9ff", other: "#e6e6e6" };
  var SIDE_LABEL = { as: "AS", ad: "AD", other: "Other" };

  function readJson(id) {
    var el = document.getElementById(id);
    return el ? JSON.parse(el.textContent) : null;
  }

  function el(name, attrs, ns) {
    var node = ns ? document.createElementNS(SVG_NS, name) : document.createElement(name);
    Object.keys(attrs || {}).forEach(function (k) { node.setAttribute(k, attrs[k]); });
    return node;
  }

  function fail(mount, message) {
    mount.textContent = "";
    var panel = el("div", { "class": "sg-error", role: "alert" });
    panel.textContent = "Cannot display this syllabus: " + message;
    mount.appendChild(panel);
  }

  function checkBundle(b) {
    if (!b || typeof b !== "object") return "bundle is not an object";
    if (b.schema_version !== 1) return "unsupported schema_version " + b.schema_version;
    var missing = ["graph", "highlights", "stats"].filter(function (k) { return !(k in b); });
    if (missing.length) return "bundle is missing " + missing.join(", ");
    return null;
  }

  function origin(pos) {
    return [MARGIN + pos.col * (CELL_W + GUTTER), MARGIN + pos.row * (CELL_H + GUTTER)];
  }

  function render(bundle, mount, config) {
    var problem = checkBundle(bundle);
    if (problem) return fail(mount, problem);
    var graph = bundle.graph;
    var byId = {};
    graph.nodes.forEach(function (n) { byId[n.id] = n; });
    var maxCol = 0, maxRow = 0;
    graph.nodes.forEach(function (n) {
      maxCol = Math.max(maxCol, n.pos.col);
      maxRow = Math.max(maxRow, n.pos.row);
    });
    var w = 2 * MARGIN + (maxCol + 1) * CELL_W + maxCol * GUTTER;
    var h = 2 * MARGIN + (maxRow + 1) * CELL_H + maxRow * GUTTER;

    mount.textContent = "";
    var svg = el("svg", { viewBox: "0 0 " + w + " " + h, "class": "sg-map" }, true);
    var defs = el("defs", {}, true);
    Object.keys(STROKE).forEach(function (kind) {
      var m = el("marker", { id: "sg-arrow-" + kind, viewBox: "0 0 10 10", refX: 10, refY: 5,
        markerWidth: 8, markerHeight: 8, orient: "auto" }, true);
      m.appendChild(el("polygon", { points: "0,0 10,5 0,10", fill: STROKE[kind] }, true));
      defs.appendChild(m);
    });
    svg.appendChild(defs);

    var edgeEls = graph.edges.map(function (e, i) {
      var a = origin(byId[e.from].pos), b = origin(byId[e.to].pos);
      var g = el("g", { "class": "sg-edge", "data-index": i }, true);
      g.appendChild(el("line", {
        x1: a[0] + CELL_W / 2, y1: a[1] + CELL_H / 2, x2: b[0] + CELL_W / 2, y2: b[1] + CELL_H / 2,
        stroke: STROKE[e.kind], "stroke-width": 2, "marker-end": "url(#sg-arrow-" + e.kind + ")"
      }, true));
      if (e.note && config.show_edge_notes) {
        var t = el("text", { x: (a[0] + b[0]) / 2 + CELL_W / 2, y: (a[1] + b[1]) / 2 + CELL_H / 2 - 4,
          "class": "sg-edge-note" }, true);
        t.textContent = e.note;
        g.appendChild(t);
      }
      svg.appendChild(g);
      return g;
    });

    var nodeEls = {};
    graph.nodes.forEach(function (n) {
      var p = origin(n.pos);
      var g = el("g", { "class": "sg-node", "data-id": n.id, tabindex: 0 }, true);
      g.appendChild(el("rect", { x: p[0], y: p[1], width: CELL_W, height: CELL_H, rx: 6, fill: FILL[n.side] }, true));
      var fo = el("foreignObject", { x: p[0], y: p[1], width: CELL_W, height: CELL_H }, true);
      var label = el("div", { "class": "sg-title" });
      label.textContent = n.title;
      fo.appendChild(label);
      g.appendChild(fo);
      if (n.chapters.length) {
        var ch = el("text", { x: p[0] + CELL_W - 6, y: p[1] + 14, "class": "sg-chapters" }, true);
        ch.textContent = n.chapters.join(", ");
        g.appendChild(ch);
      }
      svg.appendChild(g);
      nodeEls[n.id] = g;
    });

    var wrap = el("div", { "class": "sg-layout" });
    wrap.appendChild(svg);
    var panel = el("aside", { "class": "sg-panel" });
    panel.textContent = "Click a diagram to see its resources.";
    wrap.appendChild(panel);
    mount.appendChild(legend());
    mount.appendChild(wrap);

    var timer = null;
    function clear() {
      svg.classList.remove("sg-active");
      Object.keys(nodeEls).forEach(function (id) { nodeEls[id].classList.remove("lit"); });
      edgeEls.forEach(function (g) { g.classList.remove("lit"); });
    }
    function light(id) {
      var set = bundle.highlights[id];
      svg.classList.add("sg-active");
      set.node_ids.forEach(function (n) { nodeEls[n].classList.add("lit"); });
      set.edge_indices.forEach(function (i) { edgeEls[i].classList.add("lit"); });
    }
    Object.keys(nodeEls).forEach(function (id) {
      var g = nodeEls[id];
      g.addEventListener("mouseenter", function () {
        clearTimeout(timer);
        timer = setTimeout(function () { light(id); }, config.hover_delay_ms);
      });
      g.addEventListener("mouseleave", function () {
        clearTimeout(timer);
        timer = null;
        clear();
      });
      g.addEventListener("click", function () { showResources(panel, graph, byId[id]); });
    });
  }

  function legend() {
    var box = el("div", { "class": "sg-legend" });
    Object.keys(STROKE).forEach(function (k) {
      var item = el("span", { "class": "sg-legend-kind" });
      item.style.borderColor = STROKE[k];
      item.textContent = k.replace("_", "-");
      box.appendChild(item);
    });
    Object.keys(FILL).forEach(function (k) {
      var item = el("span", { "class": "sg-legend-side" });
      item.style.background = FILL[k];
      item.textContent = SIDE_LABEL[k];
      box.appendChild(item);
    });
    return box;
  }

  function showResources(panel, graph, node) {
    panel.textContent = "";
    var h = el("h2");
    h.textContent = node.title;
    panel.appendChild(h);
    var kinds = ["video", "text", "audio"];
    var any = false;
    kinds.forEach(function (kind) {
      var items = node.resources.filter(function (r) { return r.kind === kind; });
      if (!items.length) return;
      any = true;
      var sub = el("h3");
      sub.textContent = kind;
      panel.appendChild(sub);
      var list = el("ul");
      items.forEach(function (r) {
        var li = el("li");
        var a = el("a", { href: r.url, target: "_blank", rel: "noopener noreferrer" });
        a.textContent = r.label;
        li.appendChild(a);
        list.appendChild(li);
      });
      panel.appendChild(list);
    });
    if (!any) {
      var none = el("p");
      none.textContent = "no resources";
      panel.appendChild(none);
    }
    if (node.symbols.length) {
      var sh = el("h3");
      sh.textContent = "symbols";
      panel.appendChild(sh);
      var dl = el("ul");
      node.symbols.forEach(function (key) {
        var entry = graph.glossary.filter(function (s) { return s.key === key; })[0];
        var li = el("li");
        li.textContent = key + " — " + (entry ? entry.meaning : "?");
        dl.appendChild(li);
      });
      panel.appendChild(dl);
    }
  }

  function start() {
    var mount = document.getElementById("syllagraph");
    var config = Object.assign({ hover_delay_ms: 5000, show_edge_notes: true, bundle_url: "bundle.json" },
      readJson("syllagraph-config") || {});
    var inline = null;
    try {
      inline = readJson("syllagraph-bundle");
    } catch (err) {
      return fail(mount, "embedded bundle is not valid JSON");
    }
    if (inline) return render(inline, mount, config);
    fetch(config.bundle_url)
      .then(function (r) { return r.json(); })
      .then(function (b) { render(b, mount, config); })
      .catch(function (err) { fail(mount, String(err)); });
  }

  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", start);
  } else {
    start();
  }
})();
