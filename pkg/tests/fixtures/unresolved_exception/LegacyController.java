package com.demo.legacy;

import org.springframework.web.bind.annotation.DeleteMapping;
import org.springframework.web.bind.annotation.RestController;

@RestController
public class LegacyController {

    @DeleteMapping("/legacy")
    public void purge() {
        throw new UnsupportedOperationException("not yet");
    }
}
