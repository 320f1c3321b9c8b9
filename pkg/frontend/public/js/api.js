// Typed client for the stance-classifier session API. All numbers are
// passed through verbatim; the UI never recomputes a posterior.
export class ApiError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function request(url, init) {
    const res = await fetch(url, {
        headers: { "content-type": "application/json" },
        ...init,
    });
    if (!res.ok) {
        let code = "http_error";
        let message = `${res.status}`;
        try {
            const body = (await res.json());
            code = body.code ?? code;
            message = body.message ?? message;
        }
        catch {
            // non-JSON error body: keep the status text
        }
        throw new ApiError(res.status, code, message);
    }
    return (await res.json());
}
export class ApiClient {
    constructor(base = "") {
        this.base = base;
    }
    createSession(opts = {}) {
        return request(`${this.base}/api/session`, {
            method: "POST",
            body: JSON.stringify(opts),
        });
    }
    step(id, action) {
        return request(`${this.base}/api/session/${id}/step`, {
            method: "POST",
            body: JSON.stringify({ action }),
        });
    }
    undo(id) {
        return request(`${this.base}/api/session/${id}/undo`, { method: "POST" });
    }
    reset(id) {
        return request(`${this.base}/api/session/${id}/reset`, { method: "POST" });
    }
    report(id) {
        return request(`${this.base}/api/session/${id}/report`);
    }
    deleteSession(id) {
        return request(`${this.base}/api/session/${id}`, { method: "DELETE" });
    }
}
